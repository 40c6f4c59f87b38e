"""Keep-everything reference semantics used to cross-check the engine.

Clauses are frozensets of (term, positive, name) triples with terms as plain
tuples.  The closure retains every derived clause instead of a minimal set,
and the rules are evaluated directly, so any agreement with the package is
between genuinely independent code paths.
"""

from __future__ import annotations

import itertools

from splitbelief.lang import Clause, Literal, Term


def lit_triple(lit: Literal):
    return ((lit.term.symbol,) + lit.term.args, lit.positive, lit.name)


def clause_set(clause: Clause):
    return frozenset(lit_triple(l) for l in clause)


def complementary(a, b) -> bool:
    if a[0] != b[0]:
        return False
    if a[1] and b[1]:
        return a[2] != b[2]
    if a[1] != b[1]:
        return a[2] == b[2]
    return False


def subsumes(c1, c2) -> bool:
    for l in c1:
        if l[1]:
            if l in c2:
                continue
            if any((not m[1]) and m[0] == l[0] and m[2] != l[2] for m in c2):
                continue
            return False
        if l not in c2:
            return False
    return True


def up_closure(clauses):
    members = set(frozenset(c) for c in clauses)
    while True:
        units = [next(iter(c)) for c in members if len(c) == 1]
        fresh = set()
        for c in members:
            for u in units:
                reduced = frozenset(l for l in c if not complementary(l, u))
                if reduced not in members:
                    fresh.add(reduced)
        if not fresh:
            return members
        members |= fresh


def vp_contains(members, clause) -> bool:
    return any(subsumes(m, clause) for m in members)


def holds_clause(clauses, clause) -> bool:
    return vp_contains(up_closure(clauses), frozenset(clause))


def holds_level(clauses, goal_clause, level, terms, names) -> bool:
    """Belief-atom evaluation for a clause goal by direct split recursion."""
    if level == 0:
        return holds_clause(clauses, goal_clause)
    for t in terms:
        if all(
            holds_level(clauses + [frozenset(((t, True, n),))], goal_clause, level - 1, terms, names)
            for n in names
        ):
            return True
    return False
