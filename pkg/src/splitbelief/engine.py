"""Setups: clause sets kept closed under unit propagation and subsumption.

A :class:`Setup` holds the closure of its input clauses in subsumption-minimal
form: no member subsumes another, and propagating any unit member against any
member only yields clauses some member already subsumes.  Membership queries
(`contains`) test whether some member subsumes the query clause, which is the
weakening-closed view of the closure.

Closure runs in the inner loop of an exponential split search, so literals are
interned to small integers and clauses are frozensets of those ints, indexed
per function term for propagation and subsumption candidate lookup.  The
interning tables are append-only process-global caches; nothing observable
depends on the numeric ids.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .lang import (
    EMPTY_CLAUSE,
    Clause,
    Literal,
    Term,
    canonical_clause,
    complementary,
)

# Interning tables ----------------------------------------------------------

_LIT_IDS: dict[Literal, int] = {}
_LITS: list[Literal] = []
_TERM_IDS: dict[Term, int] = {}
_NAME_IDS: dict[str, int] = {}
_LIT_TERM: list[int] = []
_LIT_POS: list[bool] = []
_LIT_NAME: list[int] = []

IntClause = frozenset


def intern_term(term: Term) -> int:
    tid = _TERM_IDS.get(term)
    if tid is None:
        tid = len(_TERM_IDS)
        _TERM_IDS[term] = tid
    return tid


def intern_name(name: str) -> int:
    nid = _NAME_IDS.get(name)
    if nid is None:
        nid = len(_NAME_IDS)
        _NAME_IDS[name] = nid
    return nid


def intern_literal(lit: Literal) -> int:
    lid = _LIT_IDS.get(lit)
    if lid is None:
        lid = len(_LITS)
        _LIT_IDS[lit] = lid
        _LITS.append(lit)
        _LIT_TERM.append(intern_term(lit.term))
        _LIT_POS.append(lit.positive)
        _LIT_NAME.append(intern_name(lit.name))
    return lid


def literal_of(lid: int) -> Literal:
    return _LITS[lid]


def intern_clause(clause: Clause) -> IntClause:
    return frozenset(intern_literal(l) for l in clause)


def clause_of(ids: IntClause) -> Clause:
    return canonical_clause(_LITS[i] for i in ids)


def _complementary_ids(a: int, b: int) -> bool:
    if _LIT_TERM[a] != _LIT_TERM[b]:
        return False
    pa = _LIT_POS[a]
    pb = _LIT_POS[b]
    if pa and pb:
        return _LIT_NAME[a] != _LIT_NAME[b]
    if pa != pb:
        return _LIT_NAME[a] == _LIT_NAME[b]
    return False


def subsumes_ids(c1: IntClause, c2: IntClause) -> bool:
    """Interned form of :func:`subsumes`."""
    lit_pos = _LIT_POS
    lit_term = _LIT_TERM
    lit_name = _LIT_NAME
    for a in c1:
        if a in c2:
            continue
        if not lit_pos[a]:
            return False
        ta = lit_term[a]
        na = lit_name[a]
        # t=n is also covered by any t!=n' with n' distinct from n.
        if not any(
            (not lit_pos[b]) and lit_term[b] == ta and lit_name[b] != na for b in c2
        ):
            return False
    return True


# Public clause-level operations --------------------------------------------


def subsumes(c1: Clause, c2: Clause) -> bool:
    """True iff c1 is at least as strong as c2, literal by literal.

    Every negative literal of c1 must appear in c2; a positive ``t=n`` of c1
    is covered by ``t=n`` in c2 or by ``t!=n'`` in c2 for any other name n'.
    The empty clause subsumes everything.
    """
    return subsumes_ids(intern_clause(c1), intern_clause(c2))


def unit_propagate(clause: Clause, lit: Literal) -> Clause:
    """Remove from the clause every literal complementary to ``lit``."""
    kept = [l for l in clause if not complementary(l, lit)]
    if len(kept) == len(clause):
        return clause
    return canonical_clause(kept)


# Setups ---------------------------------------------------------------------


class Setup:
    """Immutable closure of a clause set, in subsumption-minimal form."""

    __slots__ = ("clauses", "inconsistent", "_by_term", "_units", "_minimal")

    def __init__(self, clauses, inconsistent, by_term, units):
        object.__setattr__(self, "clauses", clauses)
        object.__setattr__(self, "inconsistent", inconsistent)
        object.__setattr__(self, "_by_term", by_term)
        object.__setattr__(self, "_units", units)
        object.__setattr__(self, "_minimal", None)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Setup is immutable")

    @property
    def minimal(self) -> frozenset:
        """The minimal members as domain-level clauses."""
        if self._minimal is None:
            decoded = frozenset(clause_of(c) for c in self.clauses)
            object.__setattr__(self, "_minimal", decoded)
        return self._minimal

    def sorted_minimal(self) -> list[Clause]:
        return sorted(self.minimal, key=Clause.sort_key)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Setup)
            and self.inconsistent == other.inconsistent
            and self.clauses == other.clauses
        )

    def __hash__(self) -> int:
        return hash(self.clauses)

    def __repr__(self) -> str:
        if self.inconsistent:
            return "Setup(inconsistent)"
        return "Setup(%s)" % "; ".join(str(c) for c in self.sorted_minimal())


_INCONSISTENT_CLAUSES = frozenset((frozenset(),))


def _make_inconsistent() -> Setup:
    return Setup(_INCONSISTENT_CLAUSES, True, {}, {})


def _make_setup(members: set, by_term: dict, units: dict) -> Setup:
    return Setup(frozenset(members), False, by_term, units)


def _index_add(c: IntClause, members: set, by_term: dict, units: dict) -> None:
    members.add(c)
    for x in c:
        by_term.setdefault(_LIT_TERM[x], set()).add(c)
    if len(c) == 1:
        (u,) = c
        units.setdefault(_LIT_TERM[u], set()).add(u)


def _index_remove(c: IntClause, members: set, by_term: dict, units: dict) -> None:
    members.discard(c)
    for x in c:
        s = by_term.get(_LIT_TERM[x])
        if s is not None:
            s.discard(c)
    if len(c) == 1:
        (u,) = c
        s = units.get(_LIT_TERM[u])
        if s is not None:
            s.discard(u)


def _subsumed_by_members(c: IntClause, by_term: dict) -> bool:
    seen = set()
    for x in c:
        candidates = by_term.get(_LIT_TERM[x])
        if candidates:
            for m in candidates:
                if m not in seen:
                    seen.add(m)
                    if subsumes_ids(m, c):
                        return True
    return False


def _run_closure(pending: deque, members: set, by_term: dict, units: dict):
    """Worklist fixpoint; returns None when the empty clause is derived.

    Only unit members act as propagation sources; cascades are handled by
    requeuing every member that a newly inserted unit can shorten.  Members
    subsumed by an inserted clause are dropped without requeuing (whatever
    they could derive, the subsuming clause derives something stronger).
    """
    lit_term = _LIT_TERM
    while pending:
        c = pending.popleft()
        if units:
            dead = None
            for x in c:
                us = units.get(lit_term[x])
                if us and any(_complementary_ids(x, u) for u in us):
                    if dead is None:
                        dead = {x}
                    else:
                        dead.add(x)
            if dead:
                c = c - dead
        if not c:
            return None
        if _subsumed_by_members(c, by_term):
            continue
        t0 = lit_term[next(iter(c))]
        victims = [m for m in by_term.get(t0, ()) if subsumes_ids(c, m)]
        for m in victims:
            _index_remove(m, members, by_term, units)
        _index_add(c, members, by_term, units)
        if len(c) == 1:
            (u,) = c
            tu = lit_term[u]
            hits = [
                m
                for m in by_term.get(tu, ())
                if m is not c
                and any(
                    lit_term[x] == tu and _complementary_ids(x, u) for x in m
                )
            ]
            for m in hits:
                _index_remove(m, members, by_term, units)
                pending.append(m)
    return members, by_term, units


def close(clauses: Iterable[Clause]) -> Setup:
    """Close a clause set under unit propagation and subsumption.

    Terminates because every derived clause is a subset of some input clause.
    If the empty clause appears the result collapses to the inconsistent
    setup, whose only member is the empty clause.
    """
    pending = deque(intern_clause(c) for c in clauses)
    result = _run_closure(pending, set(), {}, {})
    if result is None:
        return _make_inconsistent()
    return _make_setup(*result)


def close_ids(clauses: Iterable[IntClause]) -> Setup:
    result = _run_closure(deque(clauses), set(), {}, {})
    if result is None:
        return _make_inconsistent()
    return _make_setup(*result)


def assert_unit_id(setup: Setup, lid: int) -> Setup:
    if setup.inconsistent:
        return setup
    unit = frozenset((lid,))
    if unit in setup.clauses:
        return setup
    members = set(setup.clauses)
    by_term = {t: set(v) for t, v in setup._by_term.items()}
    units = {t: set(v) for t, v in setup._units.items()}
    result = _run_closure(deque((unit,)), members, by_term, units)
    if result is None:
        return _make_inconsistent()
    return _make_setup(*result)


def assert_unit(setup: Setup, lit: Literal) -> Setup:
    """The closure of the setup extended with the unit clause ``{lit}``.

    Split assertions add equalities only, so the literal must be positive.
    Computed incrementally; equal to ``close(setup.minimal | {{lit}})``.
    """
    if not lit.positive:
        raise ValueError("only positive literals may be asserted")
    return assert_unit_id(setup, intern_literal(lit))


def contains_ids(setup: Setup, c: IntClause) -> bool:
    if setup.inconsistent:
        return True
    if not c:
        return False
    by_term = setup._by_term
    seen = set()
    for x in c:
        candidates = by_term.get(_LIT_TERM[x])
        if candidates:
            for m in candidates:
                if m not in seen:
                    seen.add(m)
                    if subsumes_ids(m, c):
                        return True
    return False


def contains(setup: Setup, clause: Clause) -> bool:
    """True iff some minimal member subsumes the clause.

    This is membership in the weakening closure of the setup; always true for
    an inconsistent setup, and true for the empty clause only there.
    """
    return contains_ids(setup, intern_clause(clause))
