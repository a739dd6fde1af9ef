"""Seeded random network generator for property tests.

Networks are built to be valid and livelock-free by construction:
completion transitions only move forward through the state list, at most
one unguarded and one guarded completion leave any state, and entry
actions send only "noise" events that receivers absorb through
self-loops on entry-action-free states.  Scripts drive the interesting
transitions; noise exercises routing, FIFO order and drops.
"""

from __future__ import annotations

import random

from amda import expr as X
from amda.ir import (
    ActionRef,
    Binding,
    ConditionScheme,
    EventDef,
    GenericType,
    HsaNetwork,
    IoTable,
    MemorySchema,
    Ssa,
    StateDef,
    StateKind,
    Transition,
    VarDecl,
)
from amda.pim import DispatcherDoc, Instance, Route

DRIVE_EVENTS = ("go", "back", "descend", "skip")
NOISE_EVENTS = ("noise1", "noise2")


def _rich_memory() -> MemorySchema:
    return MemorySchema((
        VarDecl("x", GenericType.INTEGER, X.parse_expr("0")),
        VarDecl("ratio", GenericType.REAL, X.parse_expr("0.5")),
        VarDecl("ok", GenericType.FLAG, X.parse_expr("false")),
        VarDecl("tag", GenericType.CHAR, X.parse_expr("'a'")),
        VarDecl("label", GenericType.STRING, X.parse_expr('"start"')),
        VarDecl("seen", GenericType.ORD_COLLECT, X.parse_expr("Sequence{1, 2}")),
        VarDecl("pool", GenericType.UNORD_COLLECT, X.parse_expr("Set{3}")),
    ))


def _plain_memory() -> MemorySchema:
    return MemorySchema((VarDecl("x", GenericType.INTEGER, X.parse_expr("0")),))


def make_hsa(seed: int, max_automata: int = 6) -> tuple:
    """Returns (HsaNetwork, DispatcherDoc, oracle instances, routes dict)."""
    rnd = random.Random(seed)
    count = rnd.randint(1, max_automata)
    parents = [None] + [rnd.randrange(0, i) for i in range(1, count)]

    composites_needed = {}
    for i in range(1, count):
        composites_needed.setdefault(parents[i], []).append(i)

    automata = []
    bindings = []
    all_sends = []  # (automaton index, event)
    composite_names = {}  # automaton index -> list of composite mid names
    for k in range(count):
        aid = "N%d" % k
        child_count = len(composites_needed.get(k, []))
        mid_count = rnd.randint(2, 4) + child_count
        mids = ["M%d" % n for n in range(1, mid_count + 1)]
        # composites are decided up front: they gain an activation entry
        # action when flattened, so they must never carry noise self-loops
        # (re-entry would restart the child unboundedly)
        composite_names[k] = mids[-child_count:] if child_count else []
        sid = lambda name: "%s_%s" % (aid, name)

        states = [StateDef(sid("S0"), "S0", StateKind.INITIAL)]
        memory = _rich_memory() if k == 0 else _plain_memory()
        conditions = []
        transitions = [Transition(sid("S0"), sid(mids[0]))]

        # every event this automaton receives: drives from the script plus
        # noise arriving from other instances' sends
        received = list(DRIVE_EVENTS) + list(NOISE_EVENTS)

        for index, name in enumerate(mids):
            is_composite = name in composite_names[k]
            entry = []
            if rnd.random() < 0.5:
                entry.append(ActionRef.inline(X.parse_stmts("x := x + 1")[0]))
            if rnd.random() < 0.6:
                all_sends.append((k, NOISE_EVENTS[rnd.randrange(len(NOISE_EVENTS))]))
                entry.append(ActionRef.send(all_sends[-1][1]))
            states.append(StateDef(sid(name), name, StateKind.ORDINARY, tuple(entry)))

            # eventful arcs: anywhere, driven by the script
            for _ in range(rnd.randint(1, 2)):
                event = DRIVE_EVENTS[rnd.randrange(len(DRIVE_EVENTS))]
                dest = rnd.choice(mids + ["End"])
                arc = Transition(sid(name), sid(dest), event=event)
                if arc not in transitions:
                    transitions.append(arc)
            # guarded completion, forward only, at most one per state
            if rnd.random() < 0.4:
                threshold = rnd.randint(1, 3)
                text = "x = %d" % threshold
                cond_id = "c%d_%d" % (index, threshold)
                if all(cid != cond_id for cid, _ in conditions):
                    conditions.append((cond_id, X.parse_expr(text)))
                forward = mids[index + 1:] + ["End"]
                transitions.append(Transition(sid(name), sid(rnd.choice(forward)),
                                              guard=cond_id))
            # unguarded completion, forward only, sparser
            elif rnd.random() < 0.25:
                forward = mids[index + 1:] + ["End"]
                transitions.append(Transition(sid(name), sid(rnd.choice(forward))))
            # noise self-loops live on states without entry actions
            if not entry and not is_composite:
                for noise in NOISE_EVENTS:
                    transitions.append(Transition(sid(name), sid(name), event=noise))

        states.append(StateDef(sid("End"), "End", StateKind.FINAL))

        automata.append(Ssa(
            id=aid,
            states=tuple(states),
            events=tuple(EventDef(e) for e in received),
            transitions=tuple(transitions),
            condition_scheme=ConditionScheme(tuple(conditions), ()),
            memory=memory,
            io_table=IoTable(),
        ))

    # bindings: child i sits under a dedicated composite mid state of its parent
    used = {}
    for i in range(1, count):
        p = parents[i]
        free = [name for name in composite_names[p] if name not in used.get(p, set())]
        composite = free[0]
        used.setdefault(p, set()).add(composite)
        bindings.append(Binding(p, "%s_%s" % (automata[p].id, composite), i))

    net = HsaNetwork(tuple(automata), tuple(bindings))

    # one root instance; sub-automata get derived instance ids
    instance_of = {0: "root"}
    for i in range(1, count):
        instance_of[i] = "root.%s" % automata[i].id
    oracle_instances = [("root", 0)]

    routes = {}
    for k, event in all_sends:
        sender = instance_of[k]
        receiver = instance_of[rnd.randrange(count)]
        routes.setdefault((sender, event), receiver)
    disp = DispatcherDoc(
        (Instance("root", automata[0].id),),
        tuple(Route(sender, event, receiver)
              for (sender, event), receiver in sorted(routes.items())),
    )
    return net, disp, oracle_instances, routes


def make_script(seed: int, net: HsaNetwork, max_len: int = 20):
    rnd = random.Random(seed * 7919 + 13)
    instance_ids = ["root"] + ["root.%s" % a.id for a in net.automata[1:]]
    script = []
    for _ in range(rnd.randint(1, max_len)):
        idx = rnd.randrange(len(net.automata))
        event = rnd.choice(net.automata[idx].event_ids())
        script.append((instance_ids[idx], event))
    return script
