"""Statechart compiler and interactive simulator over extended automata.

Pipeline: statechart XML -> flat automata network -> platform-independent
XML model -> platform-specific model -> source text, with direct
execution of the network for human-in-the-loop simulation.
"""

from .expr import GenericType, Value, eval_expr, parse_expr, parse_stmts, pretty, typecheck
from .hierarchy import FlattenError, flatten_hierarchy
from .ir import (
    ActionRef,
    Binding,
    ConditionScheme,
    Diagnostic,
    EventDef,
    FlatNetwork,
    HsaNetwork,
    IoTable,
    MemorySchema,
    Ssa,
    StateDef,
    StateKind,
    Transition,
    validate,
    validate_flat,
    validate_hsa,
)

__version__ = "0.1.0"
