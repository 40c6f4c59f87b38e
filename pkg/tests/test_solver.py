import pytest

import helpers_naive as naive
from splitbelief.engine import close
from splitbelief.generate import SplitMix64
from splitbelief.lang import Believe, Lit, Literal, Not, Or, Term
from splitbelief.oracle import entails
from splitbelief.solver import (
    Instance,
    SolverError,
    decide,
    holds,
    holds_after_split,
    split_candidates,
)
from splitbelief.suites import (
    suite_completeness,
    suite_determinism,
    suite_fresh_name,
    suite_memo,
    suite_monotone,
    suite_soundness,
    suite_stabilize,
)
from conftest import (
    FATHER_TERM,
    ORDER_F,
    ORDER_G1,
    ORDER_G2,
    ORDER_H,
    clause,
    lit,
    order_kb,
)


def test_father_split_candidates(father):
    ctx = split_candidates(father)
    assert [str(t) for t in ctx.terms] == ["fatherOf(Sally)", "rich(Frank)", "rich(Fred)"]
    assert ctx.names == ("Frank", "Fred", "Sally", "T", "@fresh")


def test_father_levels(father):
    assert not decide(father.with_level(0)).answer
    assert decide(father.with_level(1)).answer
    assert decide(father.with_level(2)).answer


def test_father_trace_covers_every_name(father):
    verdict = decide(father, trace=True)
    assert verdict.answer
    node = verdict.trace
    assert node.holds and node.term == FATHER_TERM
    assert [case.name for case in node.cases] == ["Frank", "Fred", "Sally", "T", "@fresh"]
    assert all(case.holds for case in node.cases)


def test_order_levels(order):
    assert decide(order).answer
    assert not decide(order.with_level(1)).answer


def test_order_pinned_first_splits(order):
    ctx = split_candidates(order)
    setup = close(order.kb)
    goal = Believe(1, order.query)
    assert holds_after_split(setup, ORDER_F, "T", goal, ctx)
    # After an off-path first split the level-1 goal is still provable: the
    # second split can pick h itself (h=T directly; any other value makes the
    # clause set inconsistent).  Cross-checked against the naive reference.
    assert holds_after_split(setup, ORDER_G1, "@fresh", goal, ctx)
    naive_clauses = [naive.clause_set(c) for c in order_kb()]
    naive_terms = [("f",), ("g1",), ("g2",), ("h",)]
    assert naive.holds_level(
        naive_clauses + [naive.clause_set(clause(Literal(ORDER_G1, True, "@fresh")))],
        naive.clause_set(clause(Literal(ORDER_H, True, "T"))),
        1,
        naive_terms,
        ["T", "@fresh"],
    )
    # The f-continuation does fail after splitting g1 or g2 first: pin the
    # first split, then require the second to be f.
    inner = Believe(0, order.query)
    for first in (ORDER_G1, ORDER_G2):
        for name in ctx.names:
            after_first = close(list(order.kb) + [clause(Literal(first, True, name))])
            assert not all(
                holds_after_split(after_first, ORDER_F, n, inner, ctx)
                for n in ctx.names
            ) or after_first.inconsistent


def test_holds_after_split_requires_belief_atom(order):
    ctx = split_candidates(order)
    with pytest.raises(SolverError):
        holds_after_split(close(order.kb), ORDER_F, "T", order.query, ctx)


def test_father_inconsistent_branch(father):
    ctx = split_candidates(father)
    setup = close(father.kb)
    assert holds_after_split(setup, FATHER_TERM, "Sally", Believe(0, father.query), ctx)


def test_rule7_complement_identity():
    rng = SplitMix64(61)
    terms = [Term("f"), Term("g")]
    names = ["A", "B"]
    for _ in range(60):
        kb = [
            clause(
                *[
                    Literal(terms[rng.randrange(2)], rng.boolean(), names[rng.randrange(2)])
                    for _ in range(rng.randint(1, 2))
                ]
            )
            for _ in range(rng.randint(0, 3))
        ]
        body = Lit(Literal(terms[rng.randrange(2)], rng.boolean(), names[rng.randrange(2)]))
        level = rng.randint(0, 2)
        inst = Instance(tuple(kb), body, 0)
        ctx = split_candidates(inst)
        setup = close(kb)
        assert holds(setup, Not(Believe(level, body)), ctx) != holds(
            setup, Believe(level, body), ctx
        )


def test_belief_atom_queries():
    f, g = Term("f"), Term("g")
    kb = (clause(Literal(f, True, "T")),)
    inst = Instance(kb, Believe(0, Lit(Literal(f, True, "T"))), 0)
    assert decide(inst).answer
    inst = Instance(kb, Not(Believe(2, Lit(Literal(g, True, "T")))), 0)
    assert decide(inst).answer
    inst = Instance(kb, Or(Believe(0, Lit(Literal(g, True, "T"))), Lit(Literal(f, True, "T"))), 0)
    assert decide(inst).answer


def test_negated_belief_on_inconsistent_kb():
    f = Term("f")
    kb = (clause(Literal(f, True, "A")), clause(Literal(f, True, "B")))
    assert close(kb).inconsistent
    yes = Instance(kb, Lit(Literal(f, True, "A")), 0)
    assert decide(yes).answer
    no = Instance(kb, Not(Believe(1, Lit(Literal(f, True, "A")))), 0)
    assert not decide(no).answer


def test_instance_validation():
    f = Term("f")
    with pytest.raises(SolverError):
        Instance((), Believe(1, Lit(Literal(f, True, "T"))), 2)
    with pytest.raises(SolverError):
        Instance((), Lit(Literal(f, True, "T")), -1)


def test_fresh_name_is_rejected_in_instances():
    f = Term("f")
    inst = Instance((), Lit(Literal(f, True, "@fresh")), 0)
    with pytest.raises(SolverError):
        split_candidates(inst)


def test_empty_kb():
    inst = Instance((), Lit(Literal(Term("f"), True, "T")), 0)
    assert not decide(inst).answer
    assert not decide(inst.with_level(3)).answer


def test_verdict_statistics(father):
    plain = decide(father)
    assert plain.stats.closures > 0
    assert plain.stats.peak_depth == 1
    cached = decide(father, memo=True)
    assert cached.answer == plain.answer


def test_decide_is_deterministic(father, order):
    for inst in (father, order):
        assert decide(inst, trace=True) == decide(inst, trace=True)


def test_level_suites_small():
    for fn in (
        suite_monotone,
        suite_stabilize,
        suite_soundness,
        suite_completeness,
        suite_fresh_name,
        suite_memo,
        suite_determinism,
    ):
        result = fn(5, 40)
        assert result.passed, result.failures[:3]


def test_eventual_completeness_matches_oracle_directly():
    rng = SplitMix64(67)
    terms = [Term("f"), Term("g"), Term("h")]
    names = ["A", "B"]
    for _ in range(40):
        kb = [
            clause(
                *[
                    Literal(terms[rng.randrange(3)], rng.boolean(), names[rng.randrange(2)])
                    for _ in range(rng.randint(1, 3))
                ]
            )
            for _ in range(rng.randint(0, 4))
        ]
        query = Lit(Literal(terms[rng.randrange(3)], rng.boolean(), names[rng.randrange(2)]))
        inst = Instance(tuple(kb), query, 0)
        nterms = len(split_candidates(inst).terms)
        assert decide(inst.with_level(nterms), memo=True).answer == entails(kb, query)
