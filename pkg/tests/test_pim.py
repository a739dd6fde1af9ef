import pytest

from netgen import make_hsa

from amda.frontend import chart_network, parse_statechart
from amda.hierarchy import flatten_hierarchy
from amda.ir import FlatNetwork
from amda.pim import (
    DispatcherDoc,
    Instance,
    PimError,
    Route,
    read_dispatcher,
    read_pim,
    write_dispatcher,
    write_pim,
)


def atm_network(atm_dir):
    automata = []
    for name in ["atm", "monitor", "card_reader", "keyboard"]:
        chart = parse_statechart((atm_dir / ("%s.statechart.xml" % name)).read_bytes())
        automata.extend(flatten_hierarchy(chart_network(chart)).automata)
    return FlatNetwork(tuple(automata), ())


def atm_dispatcher(atm_dir):
    return read_dispatcher((atm_dir / "atm.dispatch.xml").read_bytes())


class TestWrite:
    def test_atm_snippet_shape(self, atm_dir):
        pim_bytes, _ = write_pim(atm_network(atm_dir), atm_dispatcher(atm_dir))
        text = pim_bytes.decode()
        assert '<!DOCTYPE pim SYSTEM "pim_phsa.dtd">' in text
        assert '<phsa phsa_id="A1">' in text
        assert '<state phsa_ref="A1" state_id="A1_S0" state_name="S0" kind="initial"/>' in text
        for ev in ("ev3", "ev7", "ev8", "ev13", "ev15"):
            assert 'event_id="%s"' % ev in text
        assert '<act_send_event event_id="ev1"/>' in text

    def test_empty_memory_element_present(self):
        net, disp, _, _ = make_hsa(1)
        flat = flatten_hierarchy(net)
        # automata beyond the first have a plain integer memory; build one without
        from amda.ir import Ssa, StateDef, StateKind, Transition
        bare = Ssa(id="B", states=(StateDef("B_S0", "S0", StateKind.INITIAL),
                                   StateDef("B_End", "End", StateKind.FINAL)),
                   transitions=(Transition("B_S0", "B_End"),))
        pim_bytes, _ = write_pim(FlatNetwork((bare,), ()),
                                 DispatcherDoc((Instance("b", "B"),), ()))
        assert b"<memory>\n      <variables/>\n    </memory>" in pim_bytes

    def test_write_is_deterministic(self, atm_dir):
        net, disp = atm_network(atm_dir), atm_dispatcher(atm_dir)
        assert write_pim(net, disp) == write_pim(net, disp)


class TestRoundTrip:
    def test_atm_round_trip(self, atm_dir):
        net, disp = atm_network(atm_dir), atm_dispatcher(atm_dir)
        pim_bytes, disp_bytes = write_pim(net, disp)
        net2, disp2 = read_pim(pim_bytes, disp_bytes)
        assert net2 == net.normalized()
        assert disp2 == disp

    @pytest.mark.parametrize("seed", range(25))
    def test_random_networks_round_trip(self, seed):
        net, disp, _, _ = make_hsa(seed)
        flat = flatten_hierarchy(net)
        pim_bytes, disp_bytes = write_pim(flat, disp)
        net2, disp2 = read_pim(pim_bytes, disp_bytes)
        assert net2 == flat.normalized()
        assert disp2 == disp
        # a second write of the re-read model is byte-identical
        assert write_pim(net2, disp2)[0] == write_pim(net2, disp2)[0]

    def test_default_dispatcher_when_missing(self, atm_dir):
        pim_bytes, _ = write_pim(atm_network(atm_dir), atm_dispatcher(atm_dir))
        net, disp = read_pim(pim_bytes)
        assert [inst.id for inst in disp.instances] == ["a1", "monitor", "cardreader", "keyboard"]
        assert disp.routes == ()


class TestErrors:
    def test_missing_automat_is_dtd_violation(self, atm_dir):
        pim_bytes, _ = write_pim(atm_network(atm_dir), atm_dispatcher(atm_dir))
        import re
        broken = re.sub(rb"<automat>.*?</automat>", b"", pim_bytes, count=1, flags=re.S)
        with pytest.raises(PimError) as info:
            read_pim(broken)
        assert info.value.code == "dtd-violation"

    def test_unknown_state_src_is_dangling_reference(self, atm_dir):
        pim_bytes, _ = write_pim(atm_network(atm_dir), atm_dispatcher(atm_dir))
        broken = pim_bytes.replace(b'state_src="A1_S0"', b'state_src="A1_Ghost"')
        with pytest.raises(PimError) as info:
            read_pim(broken)
        assert info.value.code == "dangling-reference"
        assert "A1_Ghost" in str(info.value)
        assert "transition" in info.value.path

    def test_undeclared_attribute_rejected(self, atm_dir):
        pim_bytes, _ = write_pim(atm_network(atm_dir), atm_dispatcher(atm_dir))
        broken = pim_bytes.replace(b'<pim>', b'<pim flavor="x">')
        with pytest.raises(PimError) as info:
            read_pim(broken)
        assert info.value.code == "dtd-violation"

    def test_route_must_be_a_function(self, atm_dir):
        disp = DispatcherDoc(
            (Instance("a", "A1"), Instance("b", "Monitor")),
            (Route("a", "ev1", "b"), Route("a", "ev1", "a")))
        with pytest.raises(PimError) as info:
            read_pim(write_pim(atm_network(atm_dir), disp)[0],
                     write_dispatcher(disp))
        assert info.value.code == "dangling-reference"

    def test_not_xml(self):
        with pytest.raises(PimError):
            read_pim(b"this is not xml")


def test_shipped_dtd_files_match_the_writer():
    from pathlib import Path
    from amda.pim import DISPATCH_DTD, PIM_DTD
    docs = Path(__file__).parent.parent / "docs"
    assert (docs / "pim_phsa.dtd").read_text() == PIM_DTD
    assert (docs / "dispatcher.dtd").read_text() == DISPATCH_DTD
