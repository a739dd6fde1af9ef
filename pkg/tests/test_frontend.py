import pytest

from amda import expr as X
from amda.frontend import (
    FrontendError,
    chart_network,
    parse_statechart,
    sniff_format,
    synthesize_ssa,
)
from amda.ir import ActionKind, HsaNetwork, Ssa, validate

MINIMAL = b"""
<statechart name="A">
  <states>
    <state name="S0" initial="true"/>
    <state name="End" final="true"/>
  </states>
  <transitions/>
</statechart>
"""

TWO_INITIALS = b"""
<statechart name="A">
  <states>
    <state name="S0" initial="true"/>
    <state name="S1" initial="true"/>
    <state name="End" final="true"/>
  </states>
  <transitions/>
</statechart>
"""

XMI_DOC = b"""
<xmi:XMI xmlns:xmi="http://www.omg.org/XMI" xmlns:uml="http://www.omg.org/UML">
  <uml:Model name="demo">
    <packagedElement xmi:type="uml:Class" name="M">
      <ownedAttribute name="count" type="integer" default="0"/>
    </packagedElement>
    <packagedElement xmi:type="uml:StateMachine" name="M">
      <region name="main">
        <subvertex xmi:type="uml:Pseudostate" kind="initial" xmi:id="v0"/>
        <subvertex xmi:type="uml:State" xmi:id="v1" name="Work">
          <entry xmi:type="uml:OpaqueBehavior">
            <body>send(beep); count := count + 1</body>
          </entry>
        </subvertex>
        <subvertex xmi:type="uml:FinalState" xmi:id="v2"/>
        <transition source="v0" target="v1"/>
        <transition source="v1" target="v2">
          <trigger name="stop"/>
          <guard xmi:type="uml:Constraint">
            <specification xmi:type="uml:OpaqueExpression">
              <body>count &gt; 0</body>
            </specification>
          </guard>
        </transition>
      </region>
    </packagedElement>
  </uml:Model>
</xmi:XMI>
"""


class TestParsing:
    def test_minimal_native(self):
        chart = parse_statechart(MINIMAL)
        assert chart.name == "A"
        assert [s.name for s in chart.states] == ["S0", "End"]
        assert chart.transitions == ()

    def test_atm_fixture(self, atm_dir):
        chart = parse_statechart((atm_dir / "atm.statechart.xml").read_bytes())
        user_states = [s for s in chart.states if not s.final]
        assert len(user_states) == 8  # S0..S7
        assert sum(1 for s in chart.states if s.final) == 1

    def test_two_initials_rejected(self):
        with pytest.raises(FrontendError) as info:
            parse_statechart(TWO_INITIALS)
        assert info.value.code == "ambiguous-initial-state"

    def test_no_initial_rejected(self):
        doc = MINIMAL.replace(b' initial="true"', b"")
        with pytest.raises(FrontendError) as info:
            parse_statechart(doc)
        assert info.value.code == "missing-initial-state"

    def test_unknown_elements_warn(self):
        doc = MINIMAL.replace(b"<transitions/>", b"<transitions/><geometry x='1'/>")
        chart = parse_statechart(doc)
        assert any(w.code == "unknown-element" for w in chart.warnings)

    def test_sniff(self, atm_dir):
        assert sniff_format(XMI_DOC) == "xmi-subset"
        assert sniff_format((atm_dir / "atm.statechart.xml").read_bytes()) == "native"

    def test_xmi_subset(self):
        chart = parse_statechart(XMI_DOC, "xmi-subset")
        assert chart.name == "M"
        assert [s.name for s in chart.states] == ["S0", "Work", "End"]
        assert chart.variables == (("count", "integer", "0"),)
        ssa = synthesize_ssa(chart)
        assert isinstance(ssa, Ssa)
        assert ssa.event_ids() == ["stop"]
        work = ssa.state("M_Work")
        assert [a.kind for a in work.entry_actions] == [ActionKind.SEND_EVENT,
                                                        ActionKind.INLINE]
        assert validate(ssa) == []


class TestSynthesis:
    def test_atm_received_events(self, atm_dir):
        chart = parse_statechart((atm_dir / "atm.statechart.xml").read_bytes())
        ssa = synthesize_ssa(chart)
        assert ssa.event_ids() == ["ev3", "ev7", "ev8", "ev13", "ev15"]

    def test_atm_transition_table(self, atm_dir):
        chart = parse_statechart((atm_dir / "atm.statechart.xml").read_bytes())
        ssa = synthesize_ssa(chart)
        assert len(ssa.transitions) == len(chart.transitions) == 11
        s3_rows = [t for t in ssa.transitions if t.source == "A1_S3"]
        assert [t.destination for t in s3_rows] == ["A1_S4", "A1_S6", "A1_S5"]
        assert all(t.event is None and t.guard is not None for t in s3_rows)

    def test_guards_deduplicated_by_text(self):
        doc = b"""
        <statechart name="A">
          <variables><variable name="x" type="integer" init="0"/></variables>
          <states>
            <state name="S0" initial="true"/>
            <state name="S1"/><state name="S2"/>
            <state name="End" final="true"/>
          </states>
          <transitions>
            <transition from="S0" to="S1" guard="x = 1"/>
            <transition from="S1" to="S2" guard="x  =  1"/>
            <transition from="S2" to="End" guard="x = 2"/>
          </transitions>
        </statechart>
        """
        ssa = synthesize_ssa(parse_statechart(doc))
        assert len(ssa.condition_scheme.conditions) == 2
        guards = [t.guard for t in ssa.transitions]
        assert guards[0] == guards[1] != guards[2]

    def test_entry_order_preserved(self):
        doc = b"""
        <statechart name="A">
          <states>
            <state name="S0" initial="true"/>
            <state name="S1">
              <entry><send event="a"/><send event="b"/></entry>
            </state>
            <state name="End" final="true"/>
          </states>
          <transitions><transition from="S0" to="S1"/></transitions>
        </statechart>
        """
        ssa = synthesize_ssa(parse_statechart(doc))
        actions = ssa.state("A_S1").entry_actions
        assert [a.payload.event for a in actions] == ["a", "b"]

    def test_transition_action_rejected(self):
        doc = b"""
        <statechart name="A">
          <states>
            <state name="S0" initial="true"/><state name="End" final="true"/>
          </states>
          <transitions><transition from="S0" to="End" action="x := 1"/></transitions>
        </statechart>
        """
        with pytest.raises(FrontendError) as info:
            synthesize_ssa(parse_statechart(doc))
        assert info.value.code == "transition-action-unsupported"

    def test_bad_guard_names_location(self):
        doc = MINIMAL.replace(
            b"<transitions/>",
            b'<transitions><transition from="S0" to="End" guard="1 +"/></transitions>')
        with pytest.raises(FrontendError) as info:
            synthesize_ssa(parse_statechart(doc))
        assert info.value.code == "expression-parse-error"

    def test_undeclared_function_becomes_external_with_warning(self):
        doc = b"""
        <statechart name="A">
          <states>
            <state name="S0" initial="true"/>
            <state name="S1"><entry><call function="mystery"/></entry></state>
            <state name="End" final="true"/>
          </states>
          <transitions><transition from="S0" to="S1"/></transitions>
        </statechart>
        """
        chart = parse_statechart(doc)
        ssa = synthesize_ssa(chart)
        fa = ssa.condition_scheme.func("mystery")
        assert fa is not None and fa.external
        assert any(w.code == "implicit-external-function" for w in chart.warnings)

    def test_composites_make_a_network(self):
        doc = b"""
        <statechart name="Outer">
          <states>
            <state name="S0" initial="true"/>
            <state name="Work">
              <statechart name="Inner">
                <states>
                  <state name="S0" initial="true"/>
                  <state name="End" final="true"/>
                </states>
                <transitions><transition from="S0" to="End"/></transitions>
              </statechart>
            </state>
            <state name="End" final="true"/>
          </states>
          <transitions><transition from="S0" to="Work" event="go"/></transitions>
        </statechart>
        """
        net = synthesize_ssa(parse_statechart(doc))
        assert isinstance(net, HsaNetwork)
        assert [a.id for a in net.automata] == ["Outer", "Inner"]
        assert net.bindings[0].state == "Outer_Work"
        assert net.bindings[0].child == 1

    def test_synthesized_output_always_validates(self, atm_dir):
        for path in sorted(atm_dir.glob("*.statechart.xml")):
            net = chart_network(parse_statechart(path.read_bytes()))
            for ssa in net.automata:
                assert validate(ssa) == [], path.name
