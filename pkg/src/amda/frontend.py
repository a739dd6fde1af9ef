"""Statechart ingestion: native XML and an XMI subset, then SSA synthesis.

Parsing keeps guard/action text raw and throws away presentation data
(geometry, colors, diagram elements).  ``synthesize_ssa`` turns the raw
chart into the automaton tables: states (with synthetic S0/End names when
unnamed), the received-event table, deduplicated conditions, entry-action
lists and the transition table.  Charts with composite states come back
as a hierarchical network.

The native schema is documented in docs/statechart-format.md; the XMI
subset in the same file covers uml:StateMachine / region / subvertex /
transition with opaque guard and entry bodies.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Optional

from . import expr as X
from .ir import (
    ActionRef,
    Binding,
    ConditionScheme,
    Diagnostic,
    EventDef,
    FuncAction,
    GenericType,
    HsaNetwork,
    IoAction,
    IoDirection,
    IoMode,
    IoTable,
    MemorySchema,
    Ssa,
    StateDef,
    StateKind,
    Transition,
    VarDecl,
    validate,
)
from .xmlio import parse_bytes


class FrontendError(Exception):
    def __init__(self, code: str, message: str, diagnostics=()):
        super().__init__(message)
        self.code = code
        self.diagnostics = list(diagnostics)


# presentation attributes silently dropped from any element
_PRESENTATION_ATTRS = {"x", "y", "width", "height", "color", "fill", "font", "zoom"}


@dataclass
class RawAction:
    kind: str  # send | call | inline | opaque
    text: str


@dataclass
class ChartState:
    name: str
    initial: bool = False
    final: bool = False
    entry: tuple = ()
    child: Optional["StatechartDoc"] = None


@dataclass
class RawTransition:
    source: str
    target: str
    event: Optional[str] = None
    guard: Optional[str] = None
    action: Optional[str] = None


@dataclass
class StatechartDoc:
    name: str
    states: tuple = ()
    transitions: tuple = ()
    variables: tuple = ()  # (name, type text, init text)
    functions: tuple = ()  # (id, external flag, body text)
    events: tuple = ()  # (id, description)
    io: tuple = ()  # (id, direction, mode, subject, destination)
    warnings: list = field(default_factory=list)


def parse_statechart(doc: bytes, format: str = "native") -> StatechartDoc:
    """Parse chart bytes; ``format`` is ``native`` or ``xmi-subset``."""
    root = parse_bytes(doc)
    if format == "native":
        chart = _parse_native(root)
    elif format == "xmi-subset":
        chart = _parse_xmi(root)
    else:
        raise FrontendError("unknown-format", "unsupported statechart format %r" % format)
    _check_initial(chart)
    return chart


def sniff_format(doc: bytes) -> str:
    root = parse_bytes(doc)
    return "xmi-subset" if _local(root.tag) == "XMI" else "native"


def _check_initial(chart: StatechartDoc, path: str = "") -> None:
    where = path or chart.name
    initials = [s for s in chart.states if s.initial]
    if not initials:
        raise FrontendError("missing-initial-state",
                            "chart %s declares no initial state" % where)
    if len(initials) > 1:
        raise FrontendError("ambiguous-initial-state",
                            "chart %s declares %d initial states" % (where, len(initials)))
    for s in chart.states:
        if s.child is not None:
            _check_initial(s.child, "%s/%s" % (where, s.name))


# ---------------------------------------------------------------------------
# Native format
# ---------------------------------------------------------------------------


def _parse_native(root, warnings=None) -> StatechartDoc:
    if root.tag != "statechart":
        raise FrontendError("malformed-xml", "expected <statechart> root, found <%s>" % root.tag)
    warnings = warnings if warnings is not None else []
    name = root.get("name", "")
    if not name:
        raise FrontendError("malformed-xml", "statechart needs a name attribute")

    states, transitions, variables = [], [], []
    functions, events, io_decls = [], [], []
    for section in root:
        tag = section.tag
        if tag == "states":
            for el in section:
                if el.tag != "state":
                    warnings.append(Diagnostic("unknown-element", el.tag, "ignored inside <states>"))
                    continue
                states.append(_parse_native_state(el, warnings))
        elif tag == "transitions":
            for el in section:
                if el.tag != "transition":
                    warnings.append(Diagnostic("unknown-element", el.tag, "ignored inside <transitions>"))
                    continue
                transitions.append(RawTransition(
                    source=el.get("from", ""),
                    target=el.get("to", ""),
                    event=el.get("event") or None,
                    guard=el.get("guard") or None,
                    action=el.get("action") or None,
                ))
        elif tag == "variables":
            for el in section:
                variables.append((el.get("name", ""), el.get("type", ""), el.get("init", "")))
        elif tag == "functions":
            for el in section:
                functions.append((el.get("id", ""),
                                  el.get("external", "false") == "true",
                                  (el.text or "").strip()))
        elif tag == "events":
            for el in section:
                events.append((el.get("id", ""), el.get("description", "")))
        elif tag == "io":
            for el in section:
                if el.tag == "input":
                    io_decls.append((el.get("id", ""), "input", el.get("mode", "stream"),
                                     el.get("var", ""), el.get("destination", "")))
                elif el.tag == "output":
                    io_decls.append((el.get("id", ""), "output", el.get("mode", "stream"),
                                     el.get("expr", ""), el.get("destination", "")))
                else:
                    warnings.append(Diagnostic("unknown-element", el.tag, "ignored inside <io>"))
        else:
            warnings.append(Diagnostic("unknown-element", tag, "ignored at chart level"))
    return StatechartDoc(name=name, states=tuple(states), transitions=tuple(transitions),
                         variables=tuple(variables), functions=tuple(functions),
                         events=tuple(events), io=tuple(io_decls), warnings=warnings)


def _parse_native_state(el, warnings) -> ChartState:
    entry = []
    child = None
    for sub_el in el:
        if sub_el.tag == "entry":
            for act in sub_el:
                if act.tag == "send":
                    entry.append(RawAction("send", act.get("event", "")))
                elif act.tag == "call":
                    entry.append(RawAction("call", act.get("function", "")))
                elif act.tag == "inline":
                    entry.append(RawAction("inline", (act.text or "").strip()))
                else:
                    warnings.append(Diagnostic("unknown-element", act.tag, "ignored inside <entry>"))
        elif sub_el.tag == "statechart":
            child = _parse_native(sub_el, warnings)
        else:
            warnings.append(Diagnostic("unknown-element", sub_el.tag, "ignored inside <state>"))
    return ChartState(
        name=el.get("name", ""),
        initial=el.get("initial", "false") == "true",
        final=el.get("final", "false") == "true",
        entry=tuple(entry),
        child=child,
    )


# ---------------------------------------------------------------------------
# XMI subset
# ---------------------------------------------------------------------------


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _xattr(el, name: str) -> str:
    for key, value in el.attrib.items():
        if _local(key) == name:
            return value
    return ""


def _parse_xmi(root) -> StatechartDoc:
    if _local(root.tag) != "XMI":
        raise FrontendError("malformed-xml", "expected XMI root, found <%s>" % root.tag)
    warnings = []
    machines, classes = [], []
    for model in root:
        if _local(model.tag) != "Model":
            warnings.append(Diagnostic("unknown-element", _local(model.tag), "ignored at XMI level"))
            continue
        for el in model:
            kind = _xattr(el, "type")
            if kind.endswith("StateMachine"):
                machines.append(el)
            elif kind.endswith("Class"):
                classes.append(el)
            else:
                warnings.append(Diagnostic("unknown-element", kind or _local(el.tag),
                                           "ignored packaged element"))
    if not machines:
        raise FrontendError("malformed-xml", "document contains no uml:StateMachine")
    if len(machines) > 1:
        raise FrontendError("malformed-xml", "document contains %d state machines, expected one"
                            % len(machines))
    machine = machines[0]
    name = machine.get("name", "")
    if not name:
        raise FrontendError("malformed-xml", "state machine needs a name")

    variables = []
    for cls in classes:
        if cls.get("name") == name:
            for attr in cls:
                if _local(attr.tag) == "ownedAttribute":
                    variables.append((attr.get("name", ""), attr.get("type", ""),
                                      attr.get("default", "")))
    regions = [el for el in machine if _local(el.tag) == "region"]
    if not regions:
        raise FrontendError("malformed-xml", "state machine %s has no region" % name)
    states, transitions = _parse_xmi_region(regions[0], name, warnings)
    return StatechartDoc(name=name, states=tuple(states), transitions=tuple(transitions),
                         variables=tuple(variables), warnings=warnings)


def _parse_xmi_region(region, chart_name: str, warnings):
    states, transitions = [], []
    by_id = {}
    for el in region:
        tag = _local(el.tag)
        if tag == "subvertex":
            kind = _xattr(el, "type")
            xmi_id = _xattr(el, "id")
            vname = el.get("name", "")
            if kind.endswith("Pseudostate"):
                if el.get("kind", "initial") != "initial":
                    warnings.append(Diagnostic("unknown-element", vname or xmi_id,
                                               "unsupported pseudostate kind %r ignored" % el.get("kind")))
                    continue
                state = ChartState(name=vname or "S0", initial=True)
            elif kind.endswith("FinalState"):
                state = ChartState(name=vname or "End", final=True)
            elif kind.endswith("State"):
                entry = []
                child = None
                for part in el:
                    ptag = _local(part.tag)
                    if ptag == "entry":
                        body = "".join((b.text or "") for b in part if _local(b.tag) == "body")
                        if not body:
                            body = (part.text or "").strip()
                        if body:
                            entry.append(RawAction("opaque", body))
                    elif ptag == "region":
                        sub_name = part.get("name") or "%s_%s" % (chart_name, vname)
                        sub_states, sub_transitions = _parse_xmi_region(part, sub_name, warnings)
                        child = StatechartDoc(name=sub_name, states=tuple(sub_states),
                                              transitions=tuple(sub_transitions), warnings=warnings)
                    else:
                        warnings.append(Diagnostic("unknown-element", ptag, "ignored inside state"))
                state = ChartState(name=vname, entry=tuple(entry), child=child)
            else:
                warnings.append(Diagnostic("unknown-element", kind, "ignored subvertex"))
                continue
            states.append(state)
            if xmi_id:
                by_id[xmi_id] = state.name
        elif tag == "transition":
            event = None
            guard = None
            for part in el:
                ptag = _local(part.tag)
                if ptag == "trigger":
                    event = part.get("name") or _xattr(part, "event") or None
                elif ptag == "guard":
                    bodies = part.iter()
                    for b in bodies:
                        if _local(b.tag) == "body" and (b.text or "").strip():
                            guard = b.text.strip()
                            break
                else:
                    warnings.append(Diagnostic("unknown-element", ptag, "ignored inside transition"))
            transitions.append(RawTransition(
                source=el.get("source", ""),
                target=el.get("target", ""),
                event=event,
                guard=guard,
            ))
        else:
            warnings.append(Diagnostic("unknown-element", tag, "ignored inside region"))
    # transitions reference xmi ids; rewrite them to state names
    resolved = []
    for t in transitions:
        resolved.append(RawTransition(
            source=by_id.get(t.source, t.source),
            target=by_id.get(t.target, t.target),
            event=t.event,
            guard=t.guard,
            action=t.action,
        ))
    return states, resolved


# ---------------------------------------------------------------------------
# SSA synthesis
# ---------------------------------------------------------------------------


def condition_id(canonical_text: str) -> str:
    return "c_" + hashlib.sha1(canonical_text.encode("utf-8")).hexdigest()[:8]


def synthesize_ssa(chart: StatechartDoc):
    """Build the automaton tables; returns Ssa, or HsaNetwork with composites.

    Raises FrontendError (expression-parse-error, non-tree-composites, or
    the collected diagnostics) when the chart cannot make a valid automaton.
    """
    automata = []
    bindings = []
    errors = []
    _synthesize_into(chart, automata, bindings, errors)
    if errors:
        raise FrontendError(errors[0].code, str(errors[0]), errors)
    for ssa in automata:
        problems = validate(ssa)
        if problems:
            raise FrontendError(problems[0].code,
                                "synthesized automaton %s is invalid: %s" % (ssa.id, problems[0]),
                                problems)
    if not bindings:
        return automata[0] if len(automata) == 1 else HsaNetwork(tuple(automata), ())
    return HsaNetwork(tuple(automata), tuple(bindings))


def chart_network(chart: StatechartDoc) -> HsaNetwork:
    """Always-a-network form of synthesize_ssa."""
    result = synthesize_ssa(chart)
    if isinstance(result, Ssa):
        return HsaNetwork((result,), ())
    return result


def _synthesize_into(chart, automata, bindings, errors) -> int:
    index = len(automata)
    automata.append(None)  # reserve the pre-order slot

    aut_id = chart.name
    sid = lambda name: "%s_%s" % (aut_id, name)

    # memory
    variables = []
    for name, type_text, init_text in chart.variables:
        try:
            vtype = GenericType(type_text)
        except ValueError:
            errors.append(Diagnostic("unknown-type", name,
                                     "variable %r has unknown type %r" % (name, type_text)))
            continue
        if init_text:
            try:
                init = X.parse_expr(init_text)
            except X.ExprError as err:
                errors.append(Diagnostic("expression-parse-error", name,
                                         "initializer of %r: %s" % (name, err)))
                continue
        else:
            init = _default_init(vtype)
        variables.append(VarDecl(name, vtype, init))
    memory = MemorySchema(tuple(variables))

    # io table
    io_actions = []
    for io_id, direction, mode, subject_text, destination in chart.io:
        try:
            mode_val = IoMode(mode)
        except ValueError:
            errors.append(Diagnostic("unknown-io-mode", io_id, "unknown io mode %r" % mode))
            continue
        if direction == "input":
            subject = subject_text
        else:
            try:
                subject = X.parse_expr(subject_text)
            except X.ExprError as err:
                errors.append(Diagnostic("expression-parse-error", io_id,
                                         "output expression of %r: %s" % (io_id, err)))
                continue
        io_actions.append(IoAction(io_id, IoDirection(direction), mode_val, subject, destination))
    io_table = IoTable(tuple(io_actions))

    # functions declared up front
    func_actions = []
    declared = set()
    for fid, external, body_text in chart.functions:
        declared.add(fid)
        if external:
            func_actions.append(FuncAction(fid, (), True))
            continue
        try:
            body = X.parse_stmts(body_text)
        except X.ExprError as err:
            errors.append(Diagnostic("expression-parse-error", fid,
                                     "body of function %r: %s" % (fid, err)))
            continue
        func_actions.append(FuncAction(fid, body, False))

    def ensure_function(fid: str, where: str):
        if fid not in declared:
            declared.add(fid)
            func_actions.append(FuncAction(fid, (), True))
            chart.warnings.append(Diagnostic("implicit-external-function", fid,
                                             "function %r used at %s without declaration; "
                                             "treated as external" % (fid, where)))

    # states, entry actions, composite children
    states = []
    name_to_id = {}
    for cs in chart.states:
        name = cs.name or ("S0" if cs.initial else "End" if cs.final else "")
        if not name:
            errors.append(Diagnostic("unnamed-state", aut_id, "ordinary state without a name"))
            continue
        if name in name_to_id:
            errors.append(Diagnostic("duplicate-state-name", name,
                                     "state name %r used twice in chart %s" % (name, aut_id)))
            continue
        state_id = sid(name)
        name_to_id[name] = state_id
        kind = (StateKind.INITIAL if cs.initial
                else StateKind.FINAL if cs.final
                else StateKind.ORDINARY)
        entry = []
        for raw in cs.entry:
            entry.extend(_lower_action(raw, state_id, ensure_function, errors))
        states.append(StateDef(state_id, name, kind, tuple(entry)))
        if cs.child is not None:
            child_index = _synthesize_into(cs.child, automata, bindings, errors)
            bindings.append(Binding(index, state_id, child_index))

    # transitions + deduplicated conditions + received events
    conditions = []
    cond_by_text = {}
    received = []
    transitions = []
    for t in chart.transitions:
        if t.action:
            errors.append(Diagnostic("transition-action-unsupported", t.source,
                                     "transition %s->%s carries an action; outputs belong to "
                                     "state entry actions" % (t.source, t.target)))
        guard_id = None
        if t.guard:
            try:
                canonical = X.pretty(X.parse_expr(t.guard))
            except X.ExprError as err:
                errors.append(Diagnostic("expression-parse-error", t.source,
                                         "guard on %s->%s: %s" % (t.source, t.target, err)))
                continue
            if canonical not in cond_by_text:
                cond_by_text[canonical] = condition_id(canonical)
                conditions.append((cond_by_text[canonical], X.parse_expr(canonical)))
            guard_id = cond_by_text[canonical]
        if t.event and t.event not in received:
            received.append(t.event)
        transitions.append(Transition(
            source=name_to_id.get(t.source, sid(t.source)),
            destination=name_to_id.get(t.target, sid(t.target)),
            event=t.event,
            guard=guard_id,
        ))

    descriptions = dict(chart.events)
    for ev_id, _ in chart.events:
        if ev_id not in received:
            chart.warnings.append(Diagnostic("unused-event", ev_id,
                                             "declared event %r never triggers a transition" % ev_id))
    events = tuple(EventDef(ev, descriptions.get(ev, "")) for ev in received)

    automata[index] = Ssa(
        id=aut_id,
        states=tuple(states),
        events=events,
        transitions=tuple(transitions),
        condition_scheme=ConditionScheme(tuple(conditions), tuple(func_actions)),
        memory=memory,
        io_table=io_table,
    )
    return index


def _lower_action(raw: RawAction, state_id: str, ensure_function, errors) -> list:
    if raw.kind == "send":
        return [ActionRef.send(raw.text)]
    if raw.kind == "call":
        ensure_function(raw.text, state_id)
        return [ActionRef.function(raw.text)]
    # inline / opaque: one or more statements
    try:
        stmts = X.parse_stmts(raw.text)
    except X.ExprError as err:
        errors.append(Diagnostic("expression-parse-error", state_id,
                                 "entry action at %s: %s" % (state_id, err)))
        return []
    actions = []
    for stmt in stmts:
        if isinstance(stmt, X.SendStmt):
            actions.append(ActionRef.send(stmt.event))
        elif isinstance(stmt, X.CallFunc):
            ensure_function(stmt.func, state_id)
            actions.append(ActionRef.function(stmt.func))
        else:
            actions.append(ActionRef.inline(stmt))
    return actions


def _default_init(vtype: GenericType):
    if vtype in (GenericType.ORD_COLLECT, GenericType.UNORD_COLLECT):
        return X.CollectionLit(vtype is GenericType.ORD_COLLECT, ())
    zero = X.default_value(vtype)
    return X.Lit(vtype, zero.data)
