"""The limited-belief truth relation and the top-level decision procedure.

Evaluation follows the defining rules exactly:

1. a clause holds iff some minimal member of the setup subsumes it;
2. a non-clause disjunction holds iff either disjunct holds;
3. a negated disjunction holds iff both negated disjuncts hold;
4. double negation cancels;
5. ``B 0 a`` holds iff ``a`` holds;
6. ``B k+1 a`` holds iff for some term, for every candidate name, asserting
   the equality and descending to ``B k a`` succeeds;
7. a negated belief atom holds iff the belief atom does not.

Rule 6 enumerates the function terms of the instance and its mentioned names
plus the single fresh value ``@fresh``; a finite basis is enough because
asserted equalities are the only place an unmentioned name can appear, and
such names are interchangeable.  Enumeration order is canonical (terms and
names sorted, ``@fresh`` last), so verdicts and traces are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import engine
from .lang import (
    Believe,
    Clause,
    FRESH_NAME,
    Formula,
    LangError,
    Lit,
    Literal,
    Not,
    Or,
    Term,
    as_clause,
    formula_names,
    formula_terms,
    is_objective,
    negate,
)


class SolverError(ValueError):
    """Ill-formed reasoning instance."""


@dataclass(frozen=True)
class Instance:
    """A reasoning problem: CNF knowledge base, query, belief level.

    The level is the ``k`` of ``B k query`` for objective queries; queries
    that carry their own (non-nested) belief atoms must use level 0.
    """

    kb: tuple[Clause, ...]
    query: Formula
    level: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kb", tuple(self.kb))
        if self.level < 0:
            raise SolverError("belief level must be a natural number")
        if not is_objective(self.query) and self.level != 0:
            raise SolverError(
                "level directive and in-query belief operators are mutually exclusive"
            )

    def with_level(self, level: int) -> "Instance":
        return replace(self, level=level)


@dataclass(frozen=True)
class SplitContext:
    """Split candidates: all mentioned terms, and all mentioned names plus
    the fresh value ``@fresh`` (always last)."""

    terms: tuple[Term, ...]
    names: tuple[str, ...]


def make_context(terms, names) -> SplitContext:
    """Canonicalize explicit candidate sets (``@fresh`` appended last)."""
    mentioned = sorted(n for n in set(names) if n != FRESH_NAME)
    return SplitContext(
        terms=tuple(sorted(set(terms), key=Term.sort_key)),
        names=tuple(mentioned) + (FRESH_NAME,),
    )


def split_candidates(instance: Instance) -> SplitContext:
    """The split context of an instance, from a syntactic scan."""
    terms: set[Term] = set()
    names: set[str] = set()
    for c in instance.kb:
        terms.update(c.terms())
        names.update(c.names())
    terms.update(formula_terms(instance.query))
    names.update(formula_names(instance.query))
    if FRESH_NAME in names:
        raise SolverError("%s is reserved and may not be mentioned" % FRESH_NAME)
    return make_context(terms, names)


@dataclass
class Stats:
    closures: int = 0
    cache_hits: int = 0
    peak_depth: int = 0


@dataclass(frozen=True)
class TraceCase:
    name: str
    holds: bool
    sub: "TraceNode | None"


@dataclass(frozen=True)
class TraceNode:
    """One split node: the chosen term with all its name cases on success,
    or one failing name case per tried term on failure."""

    holds: bool
    term: Term | None
    cases: tuple[TraceCase, ...]
    refuted: tuple[tuple[Term, TraceCase], ...]


@dataclass(frozen=True)
class Verdict:
    answer: bool
    trace: TraceNode | None
    stats: Stats


class _Evaluator:
    def __init__(self, ctx: SplitContext, memo: bool, trace: bool):
        self.ctx = ctx
        self.memo = memo
        self.trace = trace
        self.stats = Stats()
        self._term_ids = [
            (t, [engine.intern_literal(Literal(t, True, n)) for n in ctx.names])
            for t in ctx.terms
        ]
        self._assert_cache: dict = {}
        self._believe_cache: dict = {}
        self._clause_cache: dict = {}

    # -- closure plumbing --

    def close_kb(self, kb) -> engine.Setup:
        self.stats.closures += 1
        return engine.close(kb)

    def _assert(self, setup: engine.Setup, lid: int) -> engine.Setup:
        key = (setup.clauses, lid)
        hit = self._assert_cache.get(key)
        if hit is not None:
            return hit
        self.stats.closures += 1
        out = engine.assert_unit_id(setup, lid)
        self._assert_cache[key] = out
        return out

    def _clause_ids(self, formula: Formula):
        # Keyed by object identity; the formula is pinned in the cache value
        # so its id cannot be recycled while the evaluator lives.
        key = id(formula)
        hit = self._clause_cache.get(key)
        if hit is not None:
            return hit[1]
        clause = as_clause(formula)
        ids = engine.intern_clause(clause) if clause is not None else None
        self._clause_cache[key] = (formula, ids)
        return ids

    # -- the truth relation --

    def holds(self, setup: engine.Setup, formula: Formula) -> bool:
        ids = self._clause_ids(formula)
        if ids is not None:
            return engine.contains_ids(setup, ids)
        if isinstance(formula, Or):
            return self.holds(setup, formula.left) or self.holds(setup, formula.right)
        if isinstance(formula, Not):
            return self._holds_negated(setup, formula.body)
        if isinstance(formula, Believe):
            return self.holds_believe(setup, formula.level, formula.body, 0)[0]
        raise SolverError("unreachable formula shape")

    def _holds_negated(self, setup: engine.Setup, body: Formula) -> bool:
        # Truth of the negation of `body`, evaluated structurally so the
        # negated-disjunction and double-negation rules need no fresh nodes.
        if isinstance(body, Or):
            return self._holds_negated(setup, body.left) and self._holds_negated(
                setup, body.right
            )
        if isinstance(body, Not):
            return self.holds(setup, body.body)
        if isinstance(body, Believe):
            return not self.holds_believe(setup, body.level, body.body, 0)[0]
        if isinstance(body, Lit):
            unit = frozenset((engine.intern_literal(negate(body.literal)),))
            return engine.contains_ids(setup, unit)
        raise SolverError("unreachable formula shape under negation")

    def holds_believe(self, setup, level: int, body: Formula, depth: int):
        # Objective formulas hold outright in an inconsistent setup: every
        # clause test succeeds, so no split is needed.
        if setup.inconsistent:
            return True, None
        if level == 0:
            return self.holds(setup, body), None
        key = (setup.clauses, level, id(body)) if self.memo else None
        if key is not None:
            hit = self._believe_cache.get(key)
            if hit is not None:
                self.stats.cache_hits += 1
                return hit
        if depth + 1 > self.stats.peak_depth:
            self.stats.peak_depth = depth + 1
        result = self._split(setup, level, body, depth)
        if key is not None:
            self._believe_cache[key] = result
        return result

    def _split(self, setup, level: int, body: Formula, depth: int):
        names = self.ctx.names
        refuted = []
        for term, lids in self._term_ids:
            cases = []
            all_hold = True
            for name, lid in zip(names, lids):
                extended = self._assert(setup, lid)
                ok, sub = self.holds_believe(extended, level - 1, body, depth + 1)
                if self.trace:
                    cases.append(TraceCase(name, ok, sub))
                if not ok:
                    all_hold = False
                    break
            if all_hold:
                node = (
                    TraceNode(True, term, tuple(cases), ()) if self.trace else None
                )
                return True, node
            if self.trace:
                refuted.append((term, cases[-1]))
        node = TraceNode(False, None, (), tuple(refuted)) if self.trace else None
        return False, node


def holds(setup: engine.Setup, formula: Formula, ctx: SplitContext) -> bool:
    """The truth relation between a closed setup and a formula."""
    return _Evaluator(ctx, memo=False, trace=False).holds(setup, formula)


def holds_after_split(
    setup: engine.Setup,
    term: Term,
    name: str,
    formula: Formula,
    ctx: SplitContext,
) -> bool:
    """Evaluate a belief atom after pinning the first split to term = name."""
    if not isinstance(formula, Believe):
        raise SolverError("holds_after_split expects a belief atom")
    extended = engine.assert_unit(setup, Literal(term, True, name))
    return holds(extended, formula, ctx)


def decide(instance: Instance, trace: bool = False, memo: bool = False) -> Verdict:
    """Decide the instance: close the knowledge base, wrap an objective query
    as a belief atom at the instance level, and evaluate.

    Deterministic: candidate terms and names are tried in canonical order and
    the trace records the first successful split term per node.  The optional
    result cache changes statistics only.
    """
    ctx = split_candidates(instance)
    evaluator = _Evaluator(ctx, memo=memo, trace=trace)
    setup = evaluator.close_kb(instance.kb)
    query = instance.query
    if is_objective(query):
        answer, node = evaluator.holds_believe(setup, instance.level, query, 0)
    else:
        answer, node = evaluator.holds(setup, query), None
    return Verdict(answer, node, evaluator.stats)
