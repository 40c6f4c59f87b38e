from __future__ import annotations

import pytest

from splitbelief.lang import Lit, Literal, Or, Term, canonical_clause
from splitbelief.solver import Instance


def lit(symbol: str, name: str, positive: bool = True, args: tuple = ()):
    return Literal(Term(symbol, args), positive, name)


def clause(*lits):
    return canonical_clause(lits)


FATHER_TERM = Term("fatherOf", ("Sally",))
RICH_FRANK = Term("rich", ("Frank",))
RICH_FRED = Term("rich", ("Fred",))


def father_kb():
    return (
        clause(
            Literal(FATHER_TERM, True, "Frank"), Literal(FATHER_TERM, True, "Fred")
        ),
        clause(Literal(FATHER_TERM, False, "Frank"), Literal(RICH_FRANK, True, "T")),
        clause(Literal(FATHER_TERM, False, "Fred"), Literal(RICH_FRED, True, "T")),
    )


def father_query():
    return Or(Lit(Literal(RICH_FRANK, True, "T")), Lit(Literal(RICH_FRED, True, "T")))


@pytest.fixture
def father():
    return Instance(father_kb(), father_query(), 1)


ORDER_F = Term("f")
ORDER_G1 = Term("g1")
ORDER_G2 = Term("g2")
ORDER_H = Term("h")


def order_kb():
    f, g1, g2, h = ORDER_F, ORDER_G1, ORDER_G2, ORDER_H
    return (
        clause(Literal(f, True, "T"), Literal(g1, True, "T"), Literal(h, True, "T")),
        clause(Literal(f, False, "T"), Literal(g2, True, "T"), Literal(h, True, "T")),
        clause(Literal(f, True, "T"), Literal(g1, False, "T"), Literal(h, True, "T")),
        clause(Literal(f, False, "T"), Literal(g2, False, "T"), Literal(h, True, "T")),
    )


@pytest.fixture
def order():
    return Instance(order_kb(), Lit(Literal(ORDER_H, True, "T")), 2)
