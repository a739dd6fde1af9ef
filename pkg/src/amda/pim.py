"""Platform-independent model files: serialization, parsing, checking.

``write_pim`` renders a flat network plus its dispatcher into two XML
documents with fully deterministic bytes; ``read_pim`` is the inverse up
to state-ordering normalization.  Both documents validate against the
DTDs shipped here (see docs/pim-format.md for the element-by-element
description); ``xml.etree`` cannot enforce a DTD, so ``check_structure``
implements the same rules directly and is applied on every read and after
every write.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from . import expr as X
from .ir import (
    ActionKind,
    ActionRef,
    ActivationEdge,
    ConditionScheme,
    EventDef,
    FlatNetwork,
    FuncAction,
    GenericType,
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
)
from .xmlio import XmlFormatError, parse_bytes, serialize, sub

PIM_DOCTYPE = '<!DOCTYPE pim SYSTEM "pim_phsa.dtd">'
DISPATCH_DOCTYPE = '<!DOCTYPE dispatcher SYSTEM "dispatcher.dtd">'

PIM_DTD = """\
<!-- Document type for platform-independent automata models.
     One pim holds one or more phsa objects; each phsa couples the
     four automaton components. -->
<!ELEMENT pim (phsa+)>
<!ELEMENT phsa (automat, condscheme, memory, iosystem)>
<!ATTLIST phsa phsa_id ID #REQUIRED>

<!-- Moore core: states carry entry actions; the events listed are the
     ones this automaton receives.  Sent events appear only as
     act_send_event entry actions. -->
<!ELEMENT automat (states, events, transitions)>
<!ELEMENT states (state*)>
<!ELEMENT state (entry_action*)>
<!ATTLIST state
  phsa_ref   CDATA #REQUIRED
  state_id   ID    #REQUIRED
  state_name CDATA #REQUIRED
  kind (initial|ordinary|final|dummy) "ordinary">
<!ELEMENT entry_action (act_inline | act_func | act_send_event | act_activate)>
<!ELEMENT act_inline (#PCDATA)>
<!ELEMENT act_func EMPTY>
<!ATTLIST act_func act_id CDATA #REQUIRED>
<!ELEMENT act_send_event EMPTY>
<!ATTLIST act_send_event event_id CDATA #REQUIRED target CDATA #IMPLIED>
<!-- act_activate starts a bound sub-automaton; written by the flattener. -->
<!ELEMENT act_activate EMPTY>
<!ATTLIST act_activate act_id CDATA #REQUIRED phsa_ref CDATA #REQUIRED event_id CDATA #REQUIRED>
<!ELEMENT events (event*)>
<!ELEMENT event EMPTY>
<!ATTLIST event event_id CDATA #REQUIRED description CDATA #IMPLIED>
<!ELEMENT transitions (transition*)>
<!ELEMENT transition EMPTY>
<!ATTLIST transition
  state_src  CDATA #REQUIRED
  state_dest CDATA #REQUIRED
  event_ref  CDATA #IMPLIED
  cond_ref   CDATA #IMPLIED>

<!-- Condition scheme: guard expressions plus routine bodies. -->
<!ELEMENT condscheme (conditions, func_actions)>
<!ELEMENT conditions (condition*)>
<!ELEMENT condition (#PCDATA)>
<!ATTLIST condition cond_id CDATA #REQUIRED>
<!ELEMENT func_actions (func_action*)>
<!ELEMENT func_action (#PCDATA)>
<!ATTLIST func_action act_id CDATA #REQUIRED external (true|false) "false">

<!-- Memory: typed variables with initializer expressions. -->
<!ELEMENT memory (variables)>
<!ELEMENT variables (variable*)>
<!ELEMENT variable EMPTY>
<!ATTLIST variable
  name CDATA #REQUIRED
  type (integer|real|flag|char|string|ord_collect|unord_collect) #REQUIRED
  init CDATA #REQUIRED>

<!-- I/O system: the virtual driver's action table. -->
<!ELEMENT iosystem (io_actions)>
<!ELEMENT io_actions ((i_action | o_action)*)>
<!ELEMENT i_action EMPTY>
<!ATTLIST i_action io_id CDATA #REQUIRED mode (stream|GUI) #REQUIRED
  var_ref CDATA #REQUIRED destination CDATA #REQUIRED>
<!ELEMENT o_action EMPTY>
<!ATTLIST o_action io_id CDATA #REQUIRED mode (stream|GUI) #REQUIRED
  expr CDATA #REQUIRED destination CDATA #REQUIRED>
"""

DISPATCH_DTD = """\
<!-- Application dispatcher: object instantiation and event routing. -->
<!ELEMENT dispatcher (instances, routes)>
<!ELEMENT instances (instance*)>
<!ELEMENT instance EMPTY>
<!ATTLIST instance instance_id ID #REQUIRED phsa_ref CDATA #REQUIRED>
<!ELEMENT routes (route*)>
<!ELEMENT route EMPTY>
<!ATTLIST route from CDATA #REQUIRED event_ref CDATA #REQUIRED to CDATA #REQUIRED>
"""


class PimError(Exception):
    def __init__(self, code: str, message: str, path: str = ""):
        super().__init__("%s%s: %s" % (code, " at " + path if path else "", message))
        self.code = code
        self.path = path
        self.detail = message


@dataclass(frozen=True)
class Instance:
    id: str
    phsa: str


@dataclass(frozen=True)
class Route:
    sender: str
    event: str
    receiver: str


@dataclass(frozen=True)
class DispatcherDoc:
    """Instances in activation order plus the event routing function."""

    instances: tuple = ()
    routes: tuple = ()

    def instance(self, instance_id: str):
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        return None

    def route(self, sender: str, event: str):
        for r in self.routes:
            if r.sender == sender and r.event == event:
                return r.receiver
        return None


# ---------------------------------------------------------------------------
# Structural checking (the executable form of the DTDs above)
# ---------------------------------------------------------------------------

_ENUMS = {
    ("state", "kind"): {"initial", "ordinary", "final", "dummy"},
    ("func_action", "external"): {"true", "false"},
    ("variable", "type"): {t.value for t in GenericType},
    ("i_action", "mode"): {"stream", "GUI"},
    ("o_action", "mode"): {"stream", "GUI"},
}

# tag -> (ordered required children | None, allowed repeating children,
#         required attrs, optional attrs, text allowed)
_PIM_SCHEMA = {
    "pim": (None, {"phsa"}, (), (), False),
    "phsa": (("automat", "condscheme", "memory", "iosystem"), set(), ("phsa_id",), (), False),
    "automat": (("states", "events", "transitions"), set(), (), (), False),
    "states": (None, {"state"}, (), (), False),
    "state": (None, {"entry_action"}, ("phsa_ref", "state_id", "state_name"), ("kind",), False),
    "entry_action": (None, {"act_inline", "act_func", "act_send_event", "act_activate"},
                     (), (), False),
    "act_inline": (None, set(), (), (), True),
    "act_func": (None, set(), ("act_id",), (), False),
    "act_send_event": (None, set(), ("event_id",), ("target",), False),
    "act_activate": (None, set(), ("act_id", "phsa_ref", "event_id"), (), False),
    "events": (None, {"event"}, (), (), False),
    "event": (None, set(), ("event_id",), ("description",), False),
    "transitions": (None, {"transition"}, (), (), False),
    "transition": (None, set(), ("state_src", "state_dest"), ("event_ref", "cond_ref"), False),
    "condscheme": (("conditions", "func_actions"), set(), (), (), False),
    "conditions": (None, {"condition"}, (), (), False),
    "condition": (None, set(), ("cond_id",), (), True),
    "func_actions": (None, {"func_action"}, (), (), False),
    "func_action": (None, set(), ("act_id",), ("external",), True),
    "memory": (("variables",), set(), (), (), False),
    "variables": (None, {"variable"}, (), (), False),
    "variable": (None, set(), ("name", "type", "init"), (), False),
    "iosystem": (("io_actions",), set(), (), (), False),
    "io_actions": (None, {"i_action", "o_action"}, (), (), False),
    "i_action": (None, set(), ("io_id", "mode", "var_ref", "destination"), (), False),
    "o_action": (None, set(), ("io_id", "mode", "var_ref", "destination"), (), False),
}
# o_action carries expr, not var_ref
_PIM_SCHEMA["o_action"] = (None, set(), ("io_id", "mode", "expr", "destination"), (), False)

_DISPATCH_SCHEMA = {
    "dispatcher": (("instances", "routes"), set(), (), (), False),
    "instances": (None, {"instance"}, (), (), False),
    "instance": (None, set(), ("instance_id", "phsa_ref"), (), False),
    "routes": (None, {"route"}, (), (), False),
    "route": (None, set(), ("from", "event_ref", "to"), (), False),
}


def check_structure(el: ET.Element, schema: dict, path: str = "") -> None:
    path = path or "/" + el.tag
    if el.tag not in schema:
        raise PimError("dtd-violation", "unknown element <%s>" % el.tag, path)
    ordered, repeating, required, optional, text_ok = schema[el.tag]
    for attr in required:
        if attr not in el.attrib:
            raise PimError("dtd-violation", "missing attribute %r on <%s>" % (attr, el.tag), path)
    for attr in el.attrib:
        if attr not in required and attr not in optional:
            raise PimError("dtd-violation", "undeclared attribute %r on <%s>" % (attr, el.tag), path)
        allowed = _ENUMS.get((el.tag, attr))
        if allowed and el.attrib[attr] not in allowed:
            raise PimError("dtd-violation",
                           "attribute %s=%r outside (%s)" % (attr, el.attrib[attr],
                                                             "|".join(sorted(allowed))), path)
    children = list(el)
    if ordered is not None:
        tags = [c.tag for c in children]
        if tags != list(ordered):
            raise PimError("dtd-violation",
                           "<%s> needs children (%s), found (%s)"
                           % (el.tag, ", ".join(ordered), ", ".join(tags) or "none"), path)
    else:
        if el.tag == "pim" and not children:
            raise PimError("dtd-violation", "<pim> needs at least one <phsa>", path)
        if el.tag == "entry_action" and len(children) != 1:
            raise PimError("dtd-violation", "<entry_action> wraps exactly one action", path)
        for c in children:
            if c.tag not in repeating:
                raise PimError("dtd-violation", "unexpected <%s> inside <%s>" % (c.tag, el.tag), path)
    if not text_ok and (el.text or "").strip():
        raise PimError("dtd-violation", "<%s> does not allow text content" % el.tag, path)
    for index, c in enumerate(children):
        key = c.attrib.get("phsa_id") or c.attrib.get("state_id") or str(index)
        check_structure(c, schema, "%s/%s[%s]" % (path, c.tag, key))


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def write_pim(net: FlatNetwork, disp: DispatcherDoc):
    """Serialize network + dispatcher; returns (pim bytes, dispatcher bytes).

    Deterministic: states are ordered by id, transitions keep their table
    order (it carries guard priority), everything else keeps declaration
    order.  Identical inputs produce byte-identical files.
    """
    edge_by_action = {edge.action_id: edge for edge in net.activation_edges}
    root = ET.Element("pim")
    for ssa in net.automata:
        phsa = sub(root, "phsa", phsa_id=ssa.id)
        automat = sub(phsa, "automat")
        states = sub(automat, "states")
        for s in sorted(ssa.states, key=lambda s: s.id):
            state_el = sub(states, "state", phsa_ref=ssa.id, state_id=s.id,
                           state_name=s.name, kind=s.kind.value)
            for action in s.entry_actions:
                wrapper = sub(state_el, "entry_action")
                _write_action(wrapper, action, edge_by_action)
        events = sub(automat, "events")
        for ev in ssa.events:
            if ev.description:
                sub(events, "event", event_id=ev.id, description=ev.description)
            else:
                sub(events, "event", event_id=ev.id)
        transitions = sub(automat, "transitions")
        for t in ssa.transitions:
            attrs = {"state_src": t.source, "state_dest": t.destination}
            if t.event is not None:
                attrs["event_ref"] = t.event
            if t.guard is not None:
                attrs["cond_ref"] = t.guard
            sub(transitions, "transition", **attrs)

        scheme = sub(phsa, "condscheme")
        conditions = sub(scheme, "conditions")
        for cid, body in ssa.condition_scheme.conditions:
            sub(conditions, "condition", X.pretty(body), cond_id=cid)
        funcs = sub(scheme, "func_actions")
        for fa in ssa.condition_scheme.func_actions:
            sub(funcs, "func_action", X.pretty_stmts(fa.body),
                act_id=fa.id, external="true" if fa.external else "false")

        memory = sub(phsa, "memory")
        variables = sub(memory, "variables")
        for v in ssa.memory.variables:
            sub(variables, "variable", name=v.name, type=v.type.value, init=X.pretty(v.init))

        iosystem = sub(phsa, "iosystem")
        io_actions = sub(iosystem, "io_actions")
        for act in ssa.io_table.io_actions:
            if act.direction is IoDirection.INPUT:
                sub(io_actions, "i_action", io_id=act.id, mode=act.mode.value,
                    var_ref=act.subject, destination=act.destination)
            else:
                sub(io_actions, "o_action", io_id=act.id, mode=act.mode.value,
                    expr=X.pretty(act.subject), destination=act.destination)

    pim_bytes = serialize(root, PIM_DOCTYPE)
    check_structure(parse_bytes(pim_bytes), _PIM_SCHEMA)
    return pim_bytes, write_dispatcher(disp)


def _write_action(wrapper, action: ActionRef, edge_by_action) -> None:
    if action.kind is ActionKind.INLINE:
        sub(wrapper, "act_inline", X.pretty_stmt(action.payload))
    elif action.kind is ActionKind.FUNCTION:
        sub(wrapper, "act_func", act_id=action.payload)
    elif action.kind is ActionKind.SEND_EVENT:
        if action.payload.target:
            sub(wrapper, "act_send_event", event_id=action.payload.event,
                target=action.payload.target)
        else:
            sub(wrapper, "act_send_event", event_id=action.payload.event)
    else:
        edge = edge_by_action.get(action.payload.action_id)
        event = edge.event if edge else ""
        sub(wrapper, "act_activate", act_id=action.payload.action_id,
            phsa_ref=action.payload.child, event_id=event)


def write_dispatcher(disp: DispatcherDoc) -> bytes:
    root = ET.Element("dispatcher")
    instances = sub(root, "instances")
    for inst in disp.instances:
        sub(instances, "instance", instance_id=inst.id, phsa_ref=inst.phsa)
    routes = sub(root, "routes")
    for r in disp.routes:
        sub(routes, "route", **{"from": r.sender, "event_ref": r.event, "to": r.receiver})
    data = serialize(root, DISPATCH_DOCTYPE)
    check_structure(parse_bytes(data), _DISPATCH_SCHEMA)
    return data


# ---------------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------------


def read_pim(pim_bytes: bytes, dispatcher_bytes: bytes = None):
    """Parse PIM (and dispatcher, when given) back into the network.

    Without dispatcher bytes a default dispatcher is synthesized: one
    instance per automaton that is not activation-bound, no routes.
    """
    try:
        root = parse_bytes(pim_bytes)
    except XmlFormatError as err:
        raise PimError("dtd-violation", str(err)) from err
    check_structure(root, _PIM_SCHEMA)

    automata = []
    edges = []
    for phsa in root:
        ssa, phsa_edges = _read_phsa(phsa)
        automata.append(ssa)
        edges.extend(phsa_edges)
    edges.sort(key=lambda e: e.action_id)
    net = FlatNetwork(tuple(automata), tuple(edges))
    _check_references(net)

    if dispatcher_bytes is not None:
        disp = read_dispatcher(dispatcher_bytes)
    else:
        bound = {edge.child for edge in net.activation_edges}
        disp = DispatcherDoc(tuple(
            Instance(a.id.lower(), a.id) for a in net.automata if a.id not in bound))
    _check_dispatcher(net, disp)
    return net, disp


def _parse_or_raise(parser, text, path):
    try:
        return parser(text)
    except X.ExprError as err:
        raise PimError("expression-parse-error", str(err), path) from err


def _read_phsa(phsa):
    pid = phsa.get("phsa_id")
    base = "/pim/phsa[%s]" % pid
    automat, scheme_el, memory_el, iosystem_el = list(phsa)

    states = []
    edges = []
    states_el, events_el, transitions_el = list(automat)
    for s in states_el:
        actions = []
        spath = "%s/state[%s]" % (base, s.get("state_id"))
        for wrapper in s:
            act = list(wrapper)[0]
            if act.tag == "act_inline":
                stmts = _parse_or_raise(X.parse_stmts, act.text or "", spath)
                if len(stmts) != 1:
                    raise PimError("expression-parse-error",
                                   "act_inline holds %d statements, needs one" % len(stmts), spath)
                actions.append(ActionRef.inline(stmts[0]))
            elif act.tag == "act_func":
                actions.append(ActionRef.function(act.get("act_id")))
            elif act.tag == "act_send_event":
                actions.append(ActionRef.send(act.get("event_id"), act.get("target")))
            else:
                actions.append(ActionRef.activate(act.get("act_id"), act.get("phsa_ref")))
                edges.append(ActivationEdge(act.get("act_id"), act.get("phsa_ref"),
                                            act.get("event_id")))
        states.append(StateDef(s.get("state_id"), s.get("state_name"),
                               StateKind(s.get("kind", "ordinary")), tuple(actions)))

    events = tuple(EventDef(e.get("event_id"), e.get("description", "")) for e in events_el)
    transitions = tuple(
        Transition(t.get("state_src"), t.get("state_dest"),
                   t.get("event_ref"), t.get("cond_ref"))
        for t in transitions_el)

    conditions_el, funcs_el = list(scheme_el)
    conditions = tuple(
        (c.get("cond_id"), _parse_or_raise(X.parse_expr, c.text or "",
                                           "%s/condition[%s]" % (base, c.get("cond_id"))))
        for c in conditions_el)
    funcs = []
    for f in funcs_el:
        external = f.get("external", "false") == "true"
        body = () if external else _parse_or_raise(
            X.parse_stmts, f.text or "", "%s/func_action[%s]" % (base, f.get("act_id")))
        funcs.append(FuncAction(f.get("act_id"), body, external))

    variables = []
    for v in list(memory_el)[0]:
        init = _parse_or_raise(X.parse_expr, v.get("init"),
                               "%s/variable[%s]" % (base, v.get("name")))
        variables.append(VarDecl(v.get("name"), GenericType(v.get("type")), init))

    io_actions = []
    for act in list(iosystem_el)[0]:
        if act.tag == "i_action":
            io_actions.append(IoAction(act.get("io_id"), IoDirection.INPUT,
                                       IoMode(act.get("mode")), act.get("var_ref"),
                                       act.get("destination")))
        else:
            expr = _parse_or_raise(X.parse_expr, act.get("expr"),
                                   "%s/o_action[%s]" % (base, act.get("io_id")))
            io_actions.append(IoAction(act.get("io_id"), IoDirection.OUTPUT,
                                       IoMode(act.get("mode")), expr, act.get("destination")))

    ssa = Ssa(
        id=pid,
        states=tuple(states),
        events=events,
        transitions=transitions,
        condition_scheme=ConditionScheme(conditions, tuple(funcs)),
        memory=MemorySchema(tuple(variables)),
        io_table=IoTable(tuple(io_actions)),
    )
    return ssa, edges


def _check_references(net: FlatNetwork) -> None:
    ids = {a.id for a in net.automata}
    for a in net.automata:
        base = "/pim/phsa[%s]" % a.id
        state_ids = set(a.state_ids())
        event_ids = set(a.event_ids())
        cond_ids = {cid for cid, _ in a.condition_scheme.conditions}
        func_ids = {fa.id for fa in a.condition_scheme.func_actions}
        for index, t in enumerate(a.transitions):
            path = "%s/transition[%d]" % (base, index)
            if t.source not in state_ids:
                raise PimError("dangling-reference", "state_src %r unknown" % t.source, path)
            if t.destination not in state_ids:
                raise PimError("dangling-reference", "state_dest %r unknown" % t.destination, path)
            if t.event is not None and t.event not in event_ids:
                raise PimError("dangling-reference", "event_ref %r unknown" % t.event, path)
            if t.guard is not None and t.guard not in cond_ids:
                raise PimError("dangling-reference", "cond_ref %r unknown" % t.guard, path)
        for s in a.states:
            path = "%s/state[%s]" % (base, s.id)
            for action in s.entry_actions:
                if action.kind is ActionKind.FUNCTION and action.payload not in func_ids:
                    raise PimError("dangling-reference",
                                   "act_func %r unknown" % action.payload, path)
                if action.kind is ActionKind.ACTIVATE and action.payload.child not in ids:
                    raise PimError("dangling-reference",
                                   "act_activate names unknown phsa %r" % action.payload.child,
                                   path)


def read_dispatcher(data: bytes) -> DispatcherDoc:
    try:
        root = parse_bytes(data)
    except XmlFormatError as err:
        raise PimError("dtd-violation", str(err)) from err
    check_structure(root, _DISPATCH_SCHEMA)
    instances_el, routes_el = list(root)
    instances = tuple(Instance(i.get("instance_id"), i.get("phsa_ref")) for i in instances_el)
    routes = tuple(Route(r.get("from"), r.get("event_ref"), r.get("to")) for r in routes_el)
    return DispatcherDoc(instances, routes)


def _check_dispatcher(net: FlatNetwork, disp: DispatcherDoc) -> None:
    ids = {a.id for a in net.automata}
    inst_ids = set()
    for inst in disp.instances:
        if inst.phsa not in ids:
            raise PimError("dangling-reference",
                           "instance %r names unknown phsa %r" % (inst.id, inst.phsa),
                           "/dispatcher/instance[%s]" % inst.id)
        if inst.id in inst_ids:
            raise PimError("dangling-reference", "instance id %r used twice" % inst.id,
                           "/dispatcher/instance[%s]" % inst.id)
        inst_ids.add(inst.id)
    # routes may also name derived sub-automaton instances (<root>.<phsa>)
    for inst in disp.instances:
        for edge in net.activation_edges:
            inst_ids.add("%s.%s" % (inst.id, edge.child))
    seen = set()
    for r in disp.routes:
        if r.sender not in inst_ids or r.receiver not in inst_ids:
            raise PimError("dangling-reference",
                           "route %s--%s-->%s names unknown instance" % (r.sender, r.event, r.receiver),
                           "/dispatcher/route[%s]" % r.event)
        if (r.sender, r.event) in seen:
            raise PimError("dangling-reference",
                           "two routes for sender %r event %r" % (r.sender, r.event),
                           "/dispatcher/route[%s]" % r.event)
        seen.add((r.sender, r.event))
