"""Vocabulary shared by all modules: names, terms, literals, clauses, formulas.

Standard names are plain strings under the unique-names assumption: two names
denote the same individual exactly when the strings are equal.  Identifiers
beginning with ``@`` are reserved for generated symbols (the fresh split value
``@fresh``, gadget terms ``@o1``/``@w1``, the gadget value ``@t``) and are
rejected in user input.

All values here are immutable after construction and safe to share.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
RESERVED_RE = re.compile(r"@[A-Za-z0-9_]+\Z")

FRESH_NAME = "@fresh"  # stands in for every name the problem does not mention
GADGET_NAME = "@t"  # right-hand side of generated gadget literals


class LangError(ValueError):
    """Malformed vocabulary object."""


class NestedBeliefError(LangError):
    """A belief operator was applied to a body that itself contains one."""


def is_user_identifier(token: str) -> bool:
    """True for identifiers a problem file may introduce (no ``@`` prefix)."""
    return bool(IDENT_RE.match(token))


def is_reserved_identifier(token: str) -> bool:
    return bool(RESERVED_RE.match(token))


@dataclass(frozen=True, slots=True)
class Term:
    """A function symbol applied to standard names; 0-ary terms are bare symbols.

    Equality is structural, and the same symbol may appear with several
    arities (each (symbol, arity) pair is a distinct function).
    """

    symbol: str
    args: tuple[str, ...] = ()

    def sort_key(self) -> tuple:
        return (self.symbol, self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return "%s(%s)" % (self.symbol, ",".join(self.args))


@dataclass(frozen=True, slots=True)
class Literal:
    """``term = name`` when positive, ``term != name`` when negative."""

    term: Term
    positive: bool
    name: str

    def sort_key(self) -> tuple:
        return (self.term.sort_key(), self.positive, self.name)

    def __str__(self) -> str:
        op = "=" if self.positive else "!="
        return "%s%s%s" % (self.term, op, self.name)


def negate(lit: Literal) -> Literal:
    """Flip the sign of a literal; an involution."""
    return Literal(lit.term, not lit.positive, lit.name)


def complementary(l1: Literal, l2: Literal) -> bool:
    """True iff the two literals cannot hold together for trivial reasons.

    Either ``t=n`` against ``t!=n``, or ``t=n`` against ``t=n'`` for distinct
    names.  Two negative literals are never complementary.
    """
    if l1.term != l2.term:
        return False
    if l1.positive and l2.positive:
        return l1.name != l2.name
    if l1.positive != l2.positive:
        return l1.name == l2.name
    return False


class Clause:
    """A duplicate-free, canonically ordered set of literals, read disjunctively.

    May be empty (unconditionally false) and may contain complementary
    literals; no simplification is applied at construction beyond
    deduplication and sorting.
    """

    __slots__ = ("literals", "_set", "_hash")

    def __init__(self, literals: tuple[Literal, ...], _set: frozenset | None = None):
        object.__setattr__(self, "literals", literals)
        object.__setattr__(self, "_set", _set if _set is not None else frozenset(literals))
        object.__setattr__(self, "_hash", hash(self._set))

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("Clause is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Clause) and self._set == other._set

    def __hash__(self) -> int:
        return self._hash

    def __contains__(self, lit: Literal) -> bool:
        return lit in self._set

    def __iter__(self):
        return iter(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __bool__(self) -> bool:
        return bool(self.literals)

    def sort_key(self) -> tuple:
        return tuple(l.sort_key() for l in self.literals)

    def terms(self) -> set[Term]:
        return {l.term for l in self.literals}

    def names(self) -> set[str]:
        out = set()
        for l in self.literals:
            out.add(l.name)
            out.update(l.term.args)
        return out

    def __str__(self) -> str:
        if not self.literals:
            return "<empty>"
        return " | ".join(str(l) for l in self.literals)

    def __repr__(self) -> str:
        return "Clause(%s)" % self


def canonical_clause(literals) -> Clause:
    """Sort and deduplicate; the result is independent of input order."""
    lits = tuple(sorted(set(literals), key=Literal.sort_key))
    return Clause(lits)


EMPTY_CLAUSE = canonical_clause(())


# Formulas ------------------------------------------------------------------


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Lit(Formula):
    literal: Literal


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Believe(Formula):
    """``B k body``: the body is believed at level ``k``.

    Bodies must be objective; nesting belief operators is rejected at
    construction.
    """

    level: int
    body: Formula

    def __post_init__(self):
        if self.level < 0:
            raise LangError("belief level must be a natural number")
        if not is_objective(self.body):
            raise NestedBeliefError("belief operators may not be nested")


def is_objective(formula: Formula) -> bool:
    """True iff the formula contains no belief operator."""
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Believe):
            return False
        if isinstance(f, Not):
            stack.append(f.body)
        elif isinstance(f, Or):
            stack.append(f.left)
            stack.append(f.right)
    return True


def conj(left: Formula, right: Formula) -> Formula:
    """Conjunction as the standard abbreviation ``~(~a | ~b)``."""
    return Not(Or(Not(left), Not(right)))


def or_all(parts: list[Formula]) -> Formula:
    """Right-nested disjunction chain of one or more formulas."""
    if not parts:
        raise LangError("empty disjunction is not representable")
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = Or(f, out)
    return out


def conj_all(parts: list[Formula]) -> Formula:
    if not parts:
        raise LangError("empty conjunction is not representable")
    out = parts[-1]
    for f in reversed(parts[:-1]):
        out = conj(f, out)
    return out


def clause_to_formula(clause: Clause) -> Formula:
    """The disjunction-tree view of a non-empty clause."""
    if not clause:
        raise LangError("the empty clause has no formula form")
    return or_all([Lit(l) for l in clause.literals])


def _leaf_literal(f: Formula) -> Literal | None:
    # Unwraps negation chains over a single literal; anything else fails.
    neg = False
    while isinstance(f, Not):
        neg = not neg
        f = f.body
    if isinstance(f, Lit):
        return negate(f.literal) if neg else f.literal
    return None


def _collect_clause(f: Formula, out: list[Literal]) -> bool:
    if isinstance(f, Or):
        return _collect_clause(f.left, out) and _collect_clause(f.right, out)
    lit = _leaf_literal(f)
    if lit is None:
        return False
    out.append(lit)
    return True


def as_clause(formula: Formula) -> Clause | None:
    """The clause view of a disjunction tree of literals, if it has one.

    Leaves may be literals under double negation or a negated literal (which
    reads as the opposite-sign literal); a single literal yields a unit
    clause.  Returns ``None`` when any leaf is not literal-shaped.
    """
    out: list[Literal] = []
    if _collect_clause(formula, out):
        return canonical_clause(out)
    return None


def formula_terms(formula: Formula) -> set[Term]:
    out: set[Term] = set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Lit):
            out.add(f.literal.term)
        elif isinstance(f, Not):
            stack.append(f.body)
        elif isinstance(f, Or):
            stack.append(f.left)
            stack.append(f.right)
        elif isinstance(f, Believe):
            stack.append(f.body)
    return out


def formula_names(formula: Formula) -> set[str]:
    """All names mentioned, including names inside term arguments."""
    out: set[str] = set()
    stack = [formula]
    while stack:
        f = stack.pop()
        if isinstance(f, Lit):
            out.add(f.literal.name)
            out.update(f.literal.term.args)
        elif isinstance(f, Not):
            stack.append(f.body)
        elif isinstance(f, Or):
            stack.append(f.left)
            stack.append(f.right)
        elif isinstance(f, Believe):
            stack.append(f.body)
    return out
