"""Core data model: flat sequential automata and their hierarchical networks.

One automaton couples a Moore core (states, received events, transitions)
with three supporting parts: a condition scheme evaluating guards and
holding routine bodies, a memory schema of typed variables, and an I/O
table acting as a virtual driver.  Networks add composite-state bindings
(hierarchy) and, after flattening, activation edges.

Everything here is an immutable value; construction enforces payload
shapes, ``validate`` reports everything else as diagnostics.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .expr import (
    Assign,
    CallFunc,
    Expr,
    ExprError,
    GenericType,
    IoStmt,
    SendStmt,
    Stmt,
    assignable,
    typecheck,
)


class StateKind(Enum):
    INITIAL = "initial"
    ORDINARY = "ordinary"
    FINAL = "final"
    DUMMY = "dummy"

    def __str__(self) -> str:
        return self.value


class ActionKind(Enum):
    INLINE = "inline"
    FUNCTION = "function"
    SEND_EVENT = "send_event"
    # Distinguished internal kind: starts a bound sub-automaton.  Added by
    # the flattener, never written by hand.
    ACTIVATE = "activate"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SendEvent:
    """send_event payload; target None means the dispatcher routes it."""

    event: str
    target: Optional[str] = None


@dataclass(frozen=True)
class Activation:
    """activate payload: named action starting the child automaton."""

    action_id: str
    child: str


@dataclass(frozen=True)
class ActionRef:
    kind: ActionKind
    payload: Union[Stmt, str, SendEvent, Activation]

    def __post_init__(self):
        ok = {
            ActionKind.INLINE: (Assign, CallFunc, SendStmt, IoStmt),
            ActionKind.FUNCTION: (str,),
            ActionKind.SEND_EVENT: (SendEvent,),
            ActionKind.ACTIVATE: (Activation,),
        }[self.kind]
        if not isinstance(self.payload, ok):
            raise TypeError("action payload %r does not match kind %s" % (self.payload, self.kind))

    @staticmethod
    def inline(stmt: Stmt) -> "ActionRef":
        return ActionRef(ActionKind.INLINE, stmt)

    @staticmethod
    def function(func_id: str) -> "ActionRef":
        return ActionRef(ActionKind.FUNCTION, func_id)

    @staticmethod
    def send(event: str, target: Optional[str] = None) -> "ActionRef":
        return ActionRef(ActionKind.SEND_EVENT, SendEvent(event, target))

    @staticmethod
    def activate(action_id: str, child: str) -> "ActionRef":
        return ActionRef(ActionKind.ACTIVATE, Activation(action_id, child))


@dataclass(frozen=True)
class StateDef:
    id: str
    name: str
    kind: StateKind = StateKind.ORDINARY
    entry_actions: tuple = ()


@dataclass(frozen=True)
class EventDef:
    """A received event; the description feeds interactive event lists."""

    id: str
    description: str = ""


@dataclass(frozen=True)
class Transition:
    source: str
    destination: str
    event: Optional[str] = None
    guard: Optional[str] = None  # condition id

    def is_completion(self) -> bool:
        return self.event is None


@dataclass(frozen=True)
class FuncAction:
    id: str
    body: tuple = ()  # tuple[Stmt]; empty when external
    external: bool = False


@dataclass(frozen=True)
class ConditionScheme:
    conditions: tuple = ()  # tuple[(id, Expr)]
    func_actions: tuple = ()  # tuple[FuncAction]

    def condition(self, cond_id: str) -> Optional[Expr]:
        for cid, expr in self.conditions:
            if cid == cond_id:
                return expr
        return None

    def func(self, func_id: str) -> Optional[FuncAction]:
        for fa in self.func_actions:
            if fa.id == func_id:
                return fa
        return None


@dataclass(frozen=True)
class VarDecl:
    name: str
    type: GenericType
    init: Expr


@dataclass(frozen=True)
class MemorySchema:
    variables: tuple = ()  # tuple[VarDecl]

    def types(self) -> dict:
        return {v.name: v.type for v in self.variables}


class IoDirection(Enum):
    INPUT = "input"
    OUTPUT = "output"

    def __str__(self) -> str:
        return self.value


class IoMode(Enum):
    STREAM = "stream"
    GUI = "GUI"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class IoAction:
    id: str
    direction: IoDirection
    mode: IoMode
    subject: Union[str, Expr]  # variable name for input, expression for output
    destination: str = ""

    def __post_init__(self):
        if self.direction is IoDirection.INPUT and not isinstance(self.subject, str):
            raise TypeError("input io action %r needs a variable name subject" % self.id)


@dataclass(frozen=True)
class IoTable:
    io_actions: tuple = ()  # tuple[IoAction]

    def action(self, io_id: str) -> Optional[IoAction]:
        for act in self.io_actions:
            if act.id == io_id:
                return act
        return None


@dataclass(frozen=True)
class Ssa:
    """One flat automaton: Moore core + condition scheme + memory + I/O."""

    id: str
    states: tuple = ()
    events: tuple = ()  # tuple[EventDef]
    transitions: tuple = ()
    condition_scheme: ConditionScheme = ConditionScheme()
    memory: MemorySchema = MemorySchema()
    io_table: IoTable = IoTable()

    def state(self, state_id: str) -> Optional[StateDef]:
        for s in self.states:
            if s.id == state_id:
                return s
        return None

    def state_ids(self):
        return [s.id for s in self.states]

    def event_ids(self):
        return [e.id for e in self.events]

    def initial_state(self) -> Optional[StateDef]:
        for s in self.states:
            if s.kind is StateKind.INITIAL:
                return s
        return None

    def final_states(self):
        return [s for s in self.states if s.kind is StateKind.FINAL]

    def outgoing(self, state_id: str):
        return [t for t in self.transitions if t.source == state_id]


@dataclass(frozen=True)
class Binding:
    """Composite state alpha of automaton ``automaton`` runs child ``child``."""

    automaton: int
    state: str
    child: int


@dataclass(frozen=True)
class HsaNetwork:
    """Tree of automata; index 0 is the main automaton."""

    automata: tuple = ()
    bindings: tuple = ()


@dataclass(frozen=True)
class ActivationEdge:
    """Wiring left behind by flattening one composite state."""

    action_id: str
    child: str  # child automaton id
    event: str  # dummy event announcing child completion


@dataclass(frozen=True)
class FlatNetwork:
    automata: tuple = ()
    activation_edges: tuple = ()

    def automaton(self, ssa_id: str) -> Optional[Ssa]:
        for a in self.automata:
            if a.id == ssa_id:
                return a
        return None

    def dummy_event_ids(self):
        return {edge.event for edge in self.activation_edges}

    def normalized(self) -> "FlatNetwork":
        """The ordering serialization normalizes to: states sorted by id,
        activation edges by action id."""
        autos = tuple(
            Ssa(
                id=a.id,
                states=tuple(sorted(a.states, key=lambda s: s.id)),
                events=a.events,
                transitions=a.transitions,
                condition_scheme=a.condition_scheme,
                memory=a.memory,
                io_table=a.io_table,
            )
            for a in self.automata
        )
        edges = tuple(sorted(self.activation_edges, key=lambda e: e.action_id))
        return FlatNetwork(autos, edges)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    subject: str  # offending id
    message: str

    def __str__(self) -> str:
        return "[%s] %s: %s" % (self.code, self.subject, self.message)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(ssa: Ssa) -> list:
    """Check every automaton invariant; an empty list means all hold.

    Diagnostics are the result, never raised.
    """
    out = []
    seen_states = set()
    for s in ssa.states:
        if s.id in seen_states:
            out.append(Diagnostic("duplicate-state-id", s.id, "state id defined twice"))
        seen_states.add(s.id)
        if s.kind is StateKind.DUMMY and s.entry_actions:
            out.append(Diagnostic("dummy-entry-actions", s.id, "dummy states carry no entry actions"))

    initials = [s for s in ssa.states if s.kind is StateKind.INITIAL]
    if not initials:
        out.append(Diagnostic("missing-initial-state", ssa.id, "automaton has no initial state"))
    elif len(initials) > 1:
        out.append(Diagnostic("multiple-initial-states", ssa.id,
                              "more than one initial state: %s" % ", ".join(s.id for s in initials)))
    if not ssa.final_states():
        out.append(Diagnostic("missing-final-state", ssa.id, "automaton has no final state"))

    seen_events = set()
    for e in ssa.events:
        if e.id in seen_events:
            out.append(Diagnostic("duplicate-event-id", e.id, "event id defined twice"))
        seen_events.add(e.id)

    state_ids = {s.id for s in ssa.states}
    cond_ids = {cid for cid, _ in ssa.condition_scheme.conditions}
    seen_transitions = set()
    for t in ssa.transitions:
        if t.source not in state_ids:
            out.append(Diagnostic("unresolved-source", t.source,
                                  "transition source %r is not a state" % t.source))
        if t.destination not in state_ids:
            out.append(Diagnostic("unresolved-destination", t.destination,
                                  "transition destination %r is not a state" % t.destination))
        if t.event is not None and t.event not in seen_events:
            out.append(Diagnostic("unresolved-event", t.event,
                                  "transition %s->%s uses event %r missing from the event table"
                                  % (t.source, t.destination, t.event)))
        if t.guard is not None and t.guard not in cond_ids:
            out.append(Diagnostic("unresolved-guard", t.guard,
                                  "transition %s->%s references unknown condition %r"
                                  % (t.source, t.destination, t.guard)))
        if t in seen_transitions:
            out.append(Diagnostic("duplicate-transition", t.source,
                                  "exact duplicate transition %s->%s" % (t.source, t.destination)))
        seen_transitions.add(t)

    out.extend(_validate_scheme(ssa))
    out.extend(_validate_memory(ssa))
    out.extend(_validate_io(ssa))
    for s in ssa.states:
        for action in s.entry_actions:
            out.extend(_validate_action(ssa, s.id, action))
    return out


def _validate_scheme(ssa: Ssa) -> list:
    out = []
    schema = ssa.memory.types()
    seen = set()
    for cid, expr in ssa.condition_scheme.conditions:
        if cid in seen:
            out.append(Diagnostic("duplicate-condition-id", cid, "condition id defined twice"))
        seen.add(cid)
        try:
            t = typecheck(expr, schema)
            if t is not GenericType.FLAG:
                out.append(Diagnostic("guard-not-flag", cid, "guard has type %s, needs flag" % t))
        except ExprError as err:
            out.append(Diagnostic(err.code, cid, "guard %s: %s" % (cid, err.message)))
    for fa in ssa.condition_scheme.func_actions:
        if fa.id in seen:
            out.append(Diagnostic("duplicate-condition-id", fa.id,
                                  "func action id collides with another scheme entry"))
        seen.add(fa.id)
        if fa.external:
            continue
        for stmt in fa.body:
            out.extend(_validate_stmt(ssa, fa.id, stmt))
    return out


def _validate_stmt(ssa: Ssa, subject: str, stmt: Stmt) -> list:
    out = []
    schema = ssa.memory.types()
    if isinstance(stmt, Assign):
        if stmt.target not in schema:
            out.append(Diagnostic("unresolved-variable", subject,
                                  "assignment targets unknown variable %r" % stmt.target))
            return out
        try:
            t = typecheck(stmt.value, schema)
            if not assignable(schema[stmt.target], t):
                out.append(Diagnostic("type-mismatch", subject,
                                      "cannot assign %s to %s variable %r"
                                      % (t, schema[stmt.target], stmt.target)))
        except ExprError as err:
            out.append(Diagnostic(err.code, subject, err.message))
    elif isinstance(stmt, CallFunc):
        if ssa.condition_scheme.func(stmt.func) is None:
            out.append(Diagnostic("unresolved-function", subject,
                                  "call of unknown function action %r" % stmt.func))
    elif isinstance(stmt, IoStmt):
        if ssa.io_table.action(stmt.action) is None:
            out.append(Diagnostic("unresolved-io-action", subject,
                                  "invocation of unknown io action %r" % stmt.action))
    # SendStmt targets another object; resolved by the dispatcher, not here.
    return out


def _validate_memory(ssa: Ssa) -> list:
    out = []
    seen = set()
    schema = ssa.memory.types()
    for v in ssa.memory.variables:
        if v.name in seen:
            out.append(Diagnostic("duplicate-variable", v.name, "variable declared twice"))
        seen.add(v.name)
        try:
            t = typecheck(v.init, schema)
            if not assignable(v.type, t):
                out.append(Diagnostic("initializer-type", v.name,
                                      "initializer has type %s, variable is %s" % (t, v.type)))
        except ExprError as err:
            out.append(Diagnostic(err.code, v.name, err.message))
    return out


def _validate_io(ssa: Ssa) -> list:
    out = []
    seen = set()
    schema = ssa.memory.types()
    for act in ssa.io_table.io_actions:
        if act.id in seen:
            out.append(Diagnostic("duplicate-io-id", act.id, "io action id defined twice"))
        seen.add(act.id)
        if act.direction is IoDirection.INPUT:
            if act.subject not in schema:
                out.append(Diagnostic("unresolved-io-variable", act.id,
                                      "input reads into unknown variable %r" % act.subject))
        else:
            try:
                typecheck(act.subject, schema)
            except ExprError as err:
                out.append(Diagnostic(err.code, act.id, err.message))
    return out


def _validate_action(ssa: Ssa, state_id: str, action: ActionRef) -> list:
    if action.kind is ActionKind.INLINE:
        return _validate_stmt(ssa, state_id, action.payload)
    if action.kind is ActionKind.FUNCTION:
        if ssa.condition_scheme.func(action.payload) is None:
            return [Diagnostic("unresolved-function", state_id,
                               "entry action calls unknown function %r" % action.payload)]
    return []


def validate_hsa(net: HsaNetwork) -> list:
    """Per-automaton checks plus the tree structure over the bindings."""
    out = []
    for ssa in net.automata:
        out.extend(validate(ssa))
    out.extend(_check_ids_unique(net.automata))

    count = len(net.automata)
    children_seen = set()
    composites_seen = set()
    for b in net.bindings:
        if not 0 <= b.automaton < count:
            out.append(Diagnostic("unresolved-binding", str(b.automaton),
                                  "binding parent index out of range"))
            continue
        if not 0 <= b.child < count:
            out.append(Diagnostic("unresolved-binding", str(b.child),
                                  "binding child index out of range"))
            continue
        if net.automata[b.automaton].state(b.state) is None:
            out.append(Diagnostic("unresolved-binding", b.state,
                                  "composite state %r not in automaton %d" % (b.state, b.automaton)))
        if b.child == 0:
            out.append(Diagnostic("main-as-child", net.automata[0].id,
                                  "the main automaton can never be a child"))
        if b.child in children_seen:
            out.append(Diagnostic("child-bound-twice", net.automata[b.child].id,
                                  "automaton index %d bound under two composites" % b.child))
        children_seen.add(b.child)
        if (b.automaton, b.state) in composites_seen:
            out.append(Diagnostic("composite-bound-twice", b.state,
                                  "composite state bound to two children"))
        composites_seen.add((b.automaton, b.state))

    # every binding chain must reach index 0 without revisiting a node
    parent_of = {b.child: b.automaton for b in net.bindings}
    for start in parent_of:
        seen = set()
        node = start
        while node in parent_of:
            if node in seen:
                out.append(Diagnostic("cycle-in-bindings", net.automata[start].id,
                                      "binding chain from index %d never reaches the main automaton" % start))
                break
            seen.add(node)
            node = parent_of[node]
    return out


def validate_flat(net: FlatNetwork) -> list:
    out = []
    for ssa in net.automata:
        out.extend(validate(ssa))
    out.extend(_check_ids_unique(net.automata))
    ids = {a.id for a in net.automata}
    known_actions = set()
    for a in net.automata:
        for s in a.states:
            for action in s.entry_actions:
                if action.kind is ActionKind.ACTIVATE:
                    known_actions.add(action.payload.action_id)
    for edge in net.activation_edges:
        if edge.child not in ids:
            out.append(Diagnostic("unresolved-activation", edge.action_id,
                                  "activation edge names unknown automaton %r" % edge.child))
        if edge.action_id not in known_actions:
            out.append(Diagnostic("unresolved-activation", edge.action_id,
                                  "no entry action carries activation id %r" % edge.action_id))
    return out


def _check_ids_unique(automata) -> list:
    out = []
    seen = set()
    for a in automata:
        if a.id in seen:
            out.append(Diagnostic("duplicate-automaton-id", a.id, "automaton id used twice"))
        seen.add(a.id)
    return out
