"""Belief-level entailment over CNF knowledge bases.

The solver decides whether a knowledge base entails a query at a given belief
level, where the level bounds the number of case splits; a brute-force
classical oracle and several instance-building reductions validate it at desk
scale.
"""

from .engine import Setup, assert_unit, close, contains, subsumes, unit_propagate
from .lang import (
    Believe,
    Clause,
    Formula,
    Lit,
    Literal,
    Not,
    Or,
    Term,
    as_clause,
    canonical_clause,
    complementary,
    conj,
    negate,
)
from .solver import (
    Instance,
    SplitContext,
    Verdict,
    decide,
    holds,
    holds_after_split,
    split_candidates,
)

__version__ = "0.1.0"

__all__ = [
    "Believe",
    "Clause",
    "Formula",
    "Instance",
    "Lit",
    "Literal",
    "Not",
    "Or",
    "Setup",
    "SplitContext",
    "Term",
    "Verdict",
    "as_clause",
    "assert_unit",
    "canonical_clause",
    "close",
    "complementary",
    "conj",
    "contains",
    "decide",
    "holds",
    "holds_after_split",
    "negate",
    "split_candidates",
    "subsumes",
    "unit_propagate",
]
