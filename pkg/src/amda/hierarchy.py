"""Reduce a hierarchical network to a flat one.

Each composite-state binding (k, alpha, c) contributes exactly four new
elements to the network:

1. an activation entry action on alpha that starts child c,
2. a dummy state in automaton k,
3. a dummy event in automaton k, sent by every final state of c,
4. a transition alpha --dummy event--> dummy state.

All original states, events and transitions survive verbatim, so the
flattened network has exactly ``len(bindings)`` extra states and events.
"""

from __future__ import annotations

from .ir import (
    ActionRef,
    ActivationEdge,
    EventDef,
    FlatNetwork,
    HsaNetwork,
    Ssa,
    StateDef,
    StateKind,
    Transition,
)


class FlattenError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _check_tree(net: HsaNetwork) -> None:
    count = len(net.automata)
    children = set()
    for b in net.bindings:
        if not (0 <= b.automaton < count and 0 <= b.child < count):
            raise FlattenError("unresolved-binding",
                               "binding (%d, %r, %d) is out of range" % (b.automaton, b.state, b.child))
        if net.automata[b.automaton].state(b.state) is None:
            raise FlattenError("unresolved-binding",
                               "composite state %r not in automaton %d" % (b.state, b.automaton))
        if b.child == 0 or b.child in children:
            raise FlattenError("child-bound-twice",
                               "automaton index %d cannot be bound %s" %
                               (b.child, "at all (it is the main automaton)" if b.child == 0 else "twice"))
        children.add(b.child)
    parent_of = {b.child: b.automaton for b in net.bindings}
    for start in parent_of:
        seen, node = set(), start
        while node in parent_of:
            if node in seen:
                raise FlattenError("cycle-in-bindings",
                                   "bindings from index %d form a cycle" % start)
            seen.add(node)
            node = parent_of[node]


def _fresh(name: str, taken: set) -> str:
    candidate = name
    n = 2
    while candidate in taken:
        candidate = "%s_%d" % (name, n)
        n += 1
    taken.add(candidate)
    return candidate


def flatten_hierarchy(net: HsaNetwork) -> FlatNetwork:
    """Expand composite-state bindings into dummy elements.

    Raises FlattenError (cycle-in-bindings, child-bound-twice) on a
    malformed network; a binding-free network comes back unchanged.
    """
    _check_tree(net)

    # mutable working copies, keyed by automaton index
    states = [list(a.states) for a in net.automata]
    events = [list(a.events) for a in net.automata]
    transitions = [list(a.transitions) for a in net.automata]
    extra_entries = {}  # (automaton index, state id) -> [ActionRef]

    taken_states = [set(a.state_ids()) for a in net.automata]
    taken_events = [set(a.event_ids()) for a in net.automata]
    edges = []

    for b in net.bindings:
        k = b.automaton
        parent = net.automata[k]
        child = net.automata[b.child]
        dummy_state = _fresh("DummyState_%d_%s" % (k, b.state), taken_states[k])
        dummy_event = _fresh("DummyEvent_%d_%s" % (k, b.state), taken_events[k])
        action_id = "DummyAction_%d_%s" % (k, b.state)

        states[k].append(StateDef(dummy_state, dummy_state, StateKind.DUMMY))
        events[k].append(EventDef(dummy_event))
        transitions[k].append(Transition(b.state, dummy_state, event=dummy_event))
        extra_entries.setdefault((k, b.state), []).append(
            ActionRef.activate(action_id, child.id))
        for final in child.final_states():
            extra_entries.setdefault((b.child, final.id), []).append(
                ActionRef.send(dummy_event, target=parent.id))
        edges.append(ActivationEdge(action_id, child.id, dummy_event))

    flat = []
    for k, a in enumerate(net.automata):
        new_states = []
        for s in states[k]:
            added = extra_entries.get((k, s.id))
            if added:
                s = StateDef(s.id, s.name, s.kind, s.entry_actions + tuple(added))
            new_states.append(s)
        flat.append(Ssa(
            id=a.id,
            states=tuple(new_states),
            events=tuple(events[k]),
            transitions=tuple(transitions[k]),
            condition_scheme=a.condition_scheme,
            memory=a.memory,
            io_table=a.io_table,
        ))
    return FlatNetwork(tuple(flat), tuple(edges))
