"""Direct execution of a flat network with its dispatcher.

Semantics, all deterministic:

* one global FIFO carries every pending event in send order across
  instances; per-instance queues are its projection;
* enabled completion transitions fire before queued events, guarded
  ones first in table order, so transient states settle between events;
* two enabled guarded completions from one state are a conflict and
  stop the run, never resolved silently;
* events with no matching transition are consumed and logged as
  ``event_dropped`` (same for events routed nowhere or to an instance
  whose sub-automaton was never activated);
* external function actions run scripted stubs: a list of memory-write
  sequences applied per invocation, the last one repeating.

Activation of a bound sub-automaton resets it to its initial state with
freshly initialized memory; its initial completion transition then fires
within the same run.  Instances of bound sub-automata are created next
to their root instance as ``<root>.<automaton id>`` and start inactive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from . import expr as X
from .ir import (
    ActionKind,
    ActionRef,
    FlatNetwork,
    GenericType,
    IoDirection,
    Ssa,
    StateKind,
)
from .pim import DispatcherDoc
from .xmlio import parse_bytes

DEFAULT_MAX_STEPS = 10_000
_CALL_DEPTH_LIMIT = 64


class SimError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.detail = message


class SimConflictError(SimError):
    def __init__(self, message: str):
        super().__init__("guard-conflict", message)


@dataclass(frozen=True)
class TraceEntry:
    step: int
    instance: str
    kind: str  # transition | entry_action | send_event | io | event_dropped | conflict
    detail: str

    def render(self) -> str:
        return "%d\t%s\t%s\t%s" % (self.step, self.instance, self.kind, self.detail)


@dataclass
class StubBindings:
    """function-action id -> invocation scripts (lists of (var, Expr) writes)."""

    bindings: dict = field(default_factory=dict)

    def has(self, func_id: str) -> bool:
        return func_id in self.bindings

    def writes_for(self, func_id: str, invocation: int):
        scripts = self.bindings[func_id]
        if not scripts:
            return []
        return scripts[min(invocation, len(scripts) - 1)]

    @staticmethod
    def from_xml(data: bytes) -> "StubBindings":
        root = parse_bytes(data)
        if root.tag != "stubs":
            raise SimError("bad-stub-file", "expected <stubs> root, found <%s>" % root.tag)
        bindings = {}
        for stub in root:
            func = stub.get("function", "")
            scripts = []
            for invocation in stub:
                writes = []
                for setter in invocation:
                    writes.append((setter.get("var", ""), X.parse_expr(setter.get("expr", ""))))
                scripts.append(writes)
            bindings[func] = scripts
        return StubBindings(bindings)


@dataclass
class _Instance:
    id: str
    ssa: Ssa
    current: str
    memory: dict
    active: bool
    root: str  # family root instance id


class SimSession:
    """Live network of automaton instances; owned by one caller at a time."""

    def __init__(self, net: FlatNetwork, disp: DispatcherDoc, stubs: StubBindings,
                 max_steps: int = DEFAULT_MAX_STEPS, io_inputs: Optional[dict] = None):
        self.net = net
        self.disp = disp
        self.stubs = stubs
        self.max_steps = max_steps
        self.io_inputs = dict(io_inputs or {})  # io action id -> list of literal texts
        self.step = 0
        self.trace: list = []
        self.queue: list = []  # (instance id, event id)
        self.instances: dict = {}
        self._dummy_events = net.dummy_event_ids()
        self._invocations: dict = {}  # (instance id, func id) -> count
        self._bound_children = {edge.child for edge in net.activation_edges}

    # -- construction helpers ------------------------------------------------

    def _emit(self, instance: str, kind: str, detail: str) -> None:
        self.trace.append(TraceEntry(self.step, instance, kind, detail))

    def instance(self, instance_id: str) -> _Instance:
        if instance_id not in self.instances:
            raise SimError("unknown-instance", "no instance named %r" % instance_id)
        return self.instances[instance_id]

    def family_member(self, root: str, ssa_id: str) -> Optional[_Instance]:
        for inst in self.instances.values():
            if inst.root == root and inst.ssa.id == ssa_id:
                return inst
        return None


def _init_memory(ssa: Ssa) -> dict:
    # initializers evaluate top-down and may reference earlier variables
    memory: dict = {}
    for v in ssa.memory.variables:
        value = X.eval_expr(v.init, memory)
        memory[v.name] = _coerce(v.type, value, v.name)
    return memory


def _coerce(target: GenericType, value: X.Value, name: str) -> X.Value:
    if value.type is target:
        return value
    if target is GenericType.REAL and value.type is GenericType.INTEGER:
        return X.Value(GenericType.REAL, float(value.data))
    raise SimError("type-mismatch",
                   "cannot store %s value in %s variable %r" % (value.type, target, name))


def instantiate(net: FlatNetwork, disp: DispatcherDoc, stubs: StubBindings = None,
                max_steps: int = DEFAULT_MAX_STEPS, io_inputs: dict = None) -> SimSession:
    """Set up every instance in its initial state; nothing runs yet.

    The first run_to_quiescence fires the initial completion transitions.
    Raises missing-stub when an external function has no scripted binding.
    """
    stubs = stubs or StubBindings()
    for a in net.automata:
        for fa in a.condition_scheme.func_actions:
            if fa.external and not stubs.has(fa.id):
                raise SimError("missing-stub",
                               "external function %r (automaton %s) has no stub" % (fa.id, a.id))

    session = SimSession(net, disp, stubs, max_steps, io_inputs)
    children_of: dict = {}
    for edge in net.activation_edges:
        owner = _owner_of_action(net, edge.action_id)
        children_of.setdefault(owner, []).append(edge.child)

    def add_instance(instance_id: str, ssa_id: str, root: str, active: bool) -> None:
        ssa = net.automaton(ssa_id)
        if ssa is None:
            raise SimError("unknown-automaton",
                           "dispatcher instance %r names unknown automaton %r" % (instance_id, ssa_id))
        initial = ssa.initial_state()
        if initial is None:
            raise SimError("invalid-automaton", "automaton %r has no initial state" % ssa_id)
        session.instances[instance_id] = _Instance(
            instance_id, ssa, initial.id, _init_memory(ssa), active, root)
        for child_id in children_of.get(ssa_id, ()):
            add_instance("%s.%s" % (root, child_id), child_id, root, False)

    for inst in disp.instances:
        add_instance(inst.id, inst.phsa, inst.id, True)
    return session


def _owner_of_action(net: FlatNetwork, action_id: str) -> str:
    for a in net.automata:
        for s in a.states:
            for action in s.entry_actions:
                if action.kind is ActionKind.ACTIVATE and action.payload.action_id == action_id:
                    return a.id
    raise SimError("unresolved-activation", "no state carries activation %r" % action_id)


# ---------------------------------------------------------------------------
# Stepping
# ---------------------------------------------------------------------------


def _guard_holds(session: SimSession, inst: _Instance, cond_id: str) -> bool:
    body = inst.ssa.condition_scheme.condition(cond_id)
    if body is None:
        raise SimError("unresolved-guard", "condition %r missing in %s" % (cond_id, inst.ssa.id))
    value = X.eval_expr(body, inst.memory)
    if value.type is not GenericType.FLAG:
        raise SimError("guard-not-flag", "condition %r evaluated to %s" % (cond_id, value.type))
    return bool(value.data)


def _guard_text(inst: _Instance, cond_id: Optional[str]) -> str:
    if cond_id is None:
        return ""
    body = inst.ssa.condition_scheme.condition(cond_id)
    return X.pretty(body) if body is not None else cond_id


def _enabled_completion(session: SimSession, inst: _Instance, record: bool = True):
    """Guarded completions first, table order; two enabled guarded ones conflict.

    ``record=False`` keeps quiescence checks pure: the conflict still
    raises but leaves no trace entry behind.
    """
    completions = [t for t in inst.ssa.outgoing(inst.current) if t.is_completion()]
    guarded = [t for t in completions if t.guard is not None
               and _guard_holds(session, inst, t.guard)]
    if len(guarded) > 1:
        if record:
            detail = "%s: [%s] and [%s] both enabled" % (
                inst.current, _guard_text(inst, guarded[0].guard),
                _guard_text(inst, guarded[1].guard))
            session.step += 1
            session._emit(inst.id, "conflict", detail)
        raise SimConflictError("at %s in %s: transitions to %s and %s" % (
            inst.current, inst.id, guarded[0].destination, guarded[1].destination))
    if guarded:
        return guarded[0]
    for t in completions:
        if t.guard is None:
            return t
    return None


def _fire(session: SimSession, inst: _Instance, transition) -> None:
    session.step += 1
    detail = "%s -> %s" % (transition.source, transition.destination)
    if transition.event is not None:
        detail += " on %s" % transition.event
    guard_text = _guard_text(inst, transition.guard)
    if guard_text:
        detail += " [%s]" % guard_text
    session._emit(inst.id, "transition", detail)
    inst.current = transition.destination
    state = inst.ssa.state(transition.destination)
    for action in state.entry_actions:
        _exec_action(session, inst, action)


def _exec_action(session: SimSession, inst: _Instance, action: ActionRef, depth: int = 0) -> None:
    if action.kind is ActionKind.INLINE:
        _exec_stmt(session, inst, action.payload, depth)
    elif action.kind is ActionKind.FUNCTION:
        _call_function(session, inst, action.payload, depth)
    elif action.kind is ActionKind.SEND_EVENT:
        _send(session, inst, action.payload.event, action.payload.target)
    else:
        child = session.family_member(inst.root, action.payload.child)
        if child is None:
            raise SimError("unresolved-activation",
                           "no instance of %r in family %r" % (action.payload.child, inst.root))
        child.active = True
        child.current = child.ssa.initial_state().id
        child.memory = _init_memory(child.ssa)
        session._emit(inst.id, "entry_action", "activate %s" % child.id)


def _call_function(session: SimSession, inst: _Instance, func_id: str, depth: int) -> None:
    if depth >= _CALL_DEPTH_LIMIT:
        raise SimError("call-depth-exceeded", "function %r nests too deep" % func_id)
    fa = inst.ssa.condition_scheme.func(func_id)
    if fa is None:
        raise SimError("unresolved-function", "function %r missing in %s" % (func_id, inst.ssa.id))
    if fa.external:
        key = (inst.id, func_id)
        invocation = session._invocations.get(key, 0)
        session._invocations[key] = invocation + 1
        session._emit(inst.id, "entry_action", "%s() [stub]" % func_id)
        for var, value_expr in session.stubs.writes_for(func_id, invocation):
            _write_var(session, inst, var, value_expr)
        return
    session._emit(inst.id, "entry_action", "%s()" % func_id)
    for stmt in fa.body:
        _exec_stmt(session, inst, stmt, depth + 1)


def _exec_stmt(session: SimSession, inst: _Instance, stmt, depth: int) -> None:
    if isinstance(stmt, X.Assign):
        _write_var(session, inst, stmt.target, stmt.value)
    elif isinstance(stmt, X.CallFunc):
        _call_function(session, inst, stmt.func, depth + 1)
    elif isinstance(stmt, X.SendStmt):
        _send(session, inst, stmt.event, None)
    elif isinstance(stmt, X.IoStmt):
        _exec_io(session, inst, stmt.action)
    else:
        raise SimError("bad-statement", "cannot execute %r" % (stmt,))


def _write_var(session: SimSession, inst: _Instance, var: str, value_expr) -> None:
    declared = inst.ssa.memory.types()
    if var not in declared:
        raise SimError("unresolved-variable", "assignment to unknown variable %r" % var)
    value = _coerce(declared[var], X.eval_expr(value_expr, inst.memory), var)
    inst.memory[var] = value
    session._emit(inst.id, "entry_action", "%s := %s" % (var, value.render()))


def _send(session: SimSession, inst: _Instance, event: str, target: Optional[str]) -> None:
    if target:
        receiver = session.family_member(inst.root, target)
        if receiver is None:
            session._emit(inst.id, "event_dropped",
                          "%s from %s: no instance of %s" % (event, inst.id, target))
            return
        receiver_id = receiver.id
    else:
        receiver_id = session.disp.route(inst.id, event)
        if receiver_id is None:
            session._emit(inst.id, "event_dropped", "%s from %s: no route" % (event, inst.id))
            return
    note = " (self-route)" if receiver_id == inst.id else ""
    session._emit(inst.id, "send_event", "%s -> %s%s" % (event, receiver_id, note))
    session.queue.append((receiver_id, event))


def _exec_io(session: SimSession, inst: _Instance, io_id: str) -> None:
    act = inst.ssa.io_table.action(io_id)
    if act is None:
        raise SimError("unresolved-io-action", "io action %r missing in %s" % (io_id, inst.ssa.id))
    if act.direction is IoDirection.OUTPUT:
        value = X.eval_expr(act.subject, inst.memory)
        session._emit(inst.id, "io",
                      "%s %s -> %s: %s" % (act.id, act.mode, act.destination, value.render()))
        return
    feed = session.io_inputs.get(io_id)
    if not feed:
        raise SimError("io-input-exhausted", "no scripted input left for %r" % io_id)
    literal = feed.pop(0)
    value = X.eval_expr(X.parse_expr(literal), {})
    _write_var(session, inst, act.subject, X.Lit(value.type, value.data))
    session._emit(inst.id, "io",
                  "%s %s <- %s: %s" % (act.id, act.mode, act.destination, value.render()))


def run_to_quiescence(session: SimSession) -> SimSession:
    """Fire completions and drain the event queue until nothing can move.

    Raises step-budget-exceeded after ``max_steps`` microsteps (suspected
    livelock) and guard-conflict on ambiguous guarded completions.
    """
    budget = session.max_steps
    used = 0
    while True:
        moved = False
        for inst in session.instances.values():
            if not inst.active:
                continue
            transition = _enabled_completion(session, inst)
            if transition is not None:
                _fire(session, inst, transition)
                moved = True
                break
        if not moved and session.queue:
            instance_id, event = session.queue.pop(0)
            _dispatch(session, instance_id, event)
            moved = True
        if not moved:
            return session
        used += 1
        if used > budget:
            raise SimError("step-budget-exceeded",
                           "no quiescence after %d steps" % budget)


def _dispatch(session: SimSession, instance_id: str, event: str) -> None:
    inst = session.instances.get(instance_id)
    if inst is None:
        session.step += 1
        session._emit(instance_id, "event_dropped", "%s: unknown instance" % event)
        return
    if not inst.active:
        session.step += 1
        session._emit(inst.id, "event_dropped", "%s: instance inactive" % event)
        return
    if event not in inst.ssa.event_ids():
        session.step += 1
        session._emit(inst.id, "event_dropped", "%s: not in event table of %s" % (event, inst.ssa.id))
        return
    for t in inst.ssa.outgoing(inst.current):
        if t.event != event:
            continue
        if t.guard is None or _guard_holds(session, inst, t.guard):
            _fire(session, inst, t)
            return
    session.step += 1
    session._emit(inst.id, "event_dropped", "%s: no transition from %s" % (event, inst.current))


def is_quiescent(session: SimSession) -> bool:
    if session.queue:
        return False
    for inst in session.instances.values():
        if inst.active and _enabled_completion(session, inst, record=False) is not None:
            return False
    return True


def inject_event(session: SimSession, instance_id: str, event: str) -> SimSession:
    """Queue one external event on a quiescent session, then run it out."""
    inst = session.instance(instance_id)
    if event not in inst.ssa.event_ids():
        raise SimError("unknown-event",
                       "event %r is not in the event table of %s" % (event, inst.ssa.id))
    if not is_quiescent(session):
        raise SimError("not-quiescent", "pending internal work; run_to_quiescence first")
    session.queue.append((instance_id, event))
    return run_to_quiescence(session)


# ---------------------------------------------------------------------------
# Observation
# ---------------------------------------------------------------------------


def snapshot(session: SimSession, recent: int = 20) -> dict:
    """Read-only view: states, variables, possible external events, trace tail."""
    instances = []
    for inst in session.instances.values():
        possible = []
        if inst.active:
            from_here = {t.event for t in inst.ssa.outgoing(inst.current) if t.event}
            for ev in inst.ssa.events:
                if ev.id in from_here and ev.id not in session._dummy_events:
                    possible.append({"id": ev.id, "description": ev.description})
        state = inst.ssa.state(inst.current)
        instances.append({
            "id": inst.id,
            "automaton": inst.ssa.id,
            "state": inst.current,
            "state_name": state.name if state else inst.current,
            "final": bool(state and state.kind is StateKind.FINAL),
            "active": inst.active,
            "variables": [
                {"name": v.name, "type": v.type.value, "value": inst.memory[v.name].render()}
                for v in inst.ssa.memory.variables
            ],
            "possible_events": possible,
        })
    return {
        "step": session.step,
        "quiescent": is_quiescent(session),
        "instances": instances,
        "recent_trace": [e.render() for e in session.trace[-recent:]],
    }


def render_trace(entries) -> str:
    return "".join(e.render() + "\n" for e in entries)


_SCRIPT_LINE = re.compile(r"^(\S+)\s+(\S+)$")


def parse_script(text: str):
    """Event script: one ``instance event`` pair per line, ``#`` comments."""
    injections = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _SCRIPT_LINE.match(line)
        if not m:
            raise SimError("bad-script", "line %d: expected 'instance event', got %r" % (lineno, raw))
        injections.append((m.group(1), m.group(2)))
    return injections


def run_script(session: SimSession, text: str) -> SimSession:
    """Boot the session (first quiescence) then replay the event script."""
    run_to_quiescence(session)
    for instance_id, event in parse_script(text):
        inject_event(session, instance_id, event)
    return session
