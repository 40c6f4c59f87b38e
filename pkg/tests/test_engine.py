import itertools

import pytest

import helpers_naive as naive
from splitbelief.engine import assert_unit, close, contains, subsumes, unit_propagate
from splitbelief.generate import SplitMix64
from splitbelief.lang import (
    Literal,
    Term,
    canonical_clause,
    clause_to_formula,
)
from splitbelief.oracle import entails, iter_worlds
from conftest import FATHER_TERM, RICH_FRANK, RICH_FRED, clause, father_kb, lit


def test_subsumes_examples():
    assert subsumes(clause(lit("f", "T")), clause(lit("f", "T"), lit("g", "F")))
    assert subsumes(clause(lit("f", "T")), clause(lit("f", "F", positive=False)))
    assert not subsumes(clause(lit("f", "T", positive=False)), clause(lit("f", "F")))
    assert subsumes(clause(), clause(lit("f", "T")))


def test_unit_propagate_examples():
    fathers = clause(
        Literal(FATHER_TERM, False, "Frank"), Literal(RICH_FRANK, True, "T")
    )
    propagated = unit_propagate(fathers, Literal(FATHER_TERM, True, "Frank"))
    assert propagated == clause(Literal(RICH_FRANK, True, "T"))

    untouched = clause(lit("g", "F"), lit("h", "T"))
    assert unit_propagate(untouched, lit("f", "T")) is untouched

    assert unit_propagate(clause(lit("f", "T")), lit("f", "F")) == clause()


def test_close_father_examples():
    base = close(father_kb())
    assert not base.inconsistent
    assert base.minimal == frozenset(father_kb())

    frank = close(list(father_kb()) + [clause(Literal(FATHER_TERM, True, "Frank"))])
    assert frank.minimal == frozenset(
        {
            clause(Literal(FATHER_TERM, True, "Frank")),
            clause(Literal(RICH_FRANK, True, "T")),
        }
    )

    anna = close(list(father_kb()) + [clause(Literal(FATHER_TERM, True, "Anna"))])
    assert anna.inconsistent
    assert anna.minimal == frozenset({clause()})

    empty = close([])
    assert not empty.inconsistent and empty.minimal == frozenset()


def test_contains_father_examples():
    query = clause(Literal(RICH_FRANK, True, "T"), Literal(RICH_FRED, True, "T"))
    assert not contains(close(father_kb()), query)
    anna = close(list(father_kb()) + [clause(Literal(FATHER_TERM, True, "Anna"))])
    assert contains(anna, query)
    base = close(father_kb())
    for member in base.minimal:
        assert contains(base, member)
    # The empty clause is contained only in an inconsistent setup.
    assert not contains(base, clause())
    assert contains(anna, clause())


def test_assert_unit_examples():
    base = close(father_kb())
    frank = assert_unit(base, Literal(FATHER_TERM, True, "Frank"))
    assert contains(frank, clause(Literal(RICH_FRANK, True, "T")))
    again = assert_unit(frank, Literal(FATHER_TERM, True, "Frank"))
    assert again == frank
    anna = assert_unit(base, Literal(FATHER_TERM, True, "Anna"))
    assert anna.inconsistent
    with pytest.raises(ValueError):
        assert_unit(base, Literal(FATHER_TERM, False, "Frank"))


# Randomized properties --------------------------------------------------------

_TERMS = [Term("f"), Term("g"), Term("h")]
_NAMES = ["A", "B", "C"]


def random_literal(rng):
    return Literal(_TERMS[rng.randrange(3)], rng.boolean(), _NAMES[rng.randrange(3)])


def random_clause(rng, max_width=3):
    return canonical_clause(random_literal(rng) for _ in range(rng.randint(0, max_width)))


def random_clause_set(rng, max_clauses=4):
    return [random_clause(rng) for _ in range(rng.randint(0, max_clauses))]


def test_subsumes_reflexive_transitive():
    rng = SplitMix64(7)
    for _ in range(300):
        c1, c2, c3 = (random_clause(rng) for _ in range(3))
        assert subsumes(c1, c1)
        if subsumes(c1, c2) and subsumes(c2, c3):
            assert subsumes(c1, c3)


def test_subsumes_implies_classical_entailment():
    rng = SplitMix64(11)
    checked = 0
    for _ in range(400):
        c1, c2 = random_clause(rng), random_clause(rng)
        if not subsumes(c1, c2) or not c1:
            continue
        checked += 1
        terms = c1.terms() | c2.terms()
        names = c1.names() | c2.names() | {"@fresh"}
        for world in iter_worlds(terms, names):
            sat1 = any((world[l.term] == l.name) == l.positive for l in c1)
            sat2 = any((world[l.term] == l.name) == l.positive for l in c2)
            assert not sat1 or sat2
    assert checked > 20


def test_unit_propagate_is_a_subset():
    rng = SplitMix64(13)
    for _ in range(300):
        c = random_clause(rng)
        l = random_literal(rng)
        assert set(unit_propagate(c, l).literals) <= set(c.literals)


def test_close_is_idempotent():
    rng = SplitMix64(17)
    for _ in range(200):
        s = close(random_clause_set(rng))
        assert close(s.minimal) == s


def test_contains_is_monotone_in_the_input():
    rng = SplitMix64(19)
    for _ in range(200):
        xs = random_clause_set(rng)
        ys = random_clause_set(rng, max_clauses=2)
        c = random_clause(rng)
        if contains(close(xs), c):
            assert contains(close(xs + ys), c)


def test_closure_membership_is_classically_sound():
    rng = SplitMix64(23)
    for _ in range(200):
        xs = random_clause_set(rng)
        c = random_clause(rng)
        if c and contains(close(xs), c):
            assert entails(xs, clause_to_formula(c))


def test_assert_unit_equals_from_scratch_closure():
    rng = SplitMix64(29)
    for _ in range(300):
        s = close(random_clause_set(rng))
        l = Literal(_TERMS[rng.randrange(3)], True, _NAMES[rng.randrange(3)])
        incremental = assert_unit(s, l)
        scratch = close(list(s.minimal) + [canonical_clause([l])])
        assert incremental == scratch


def test_contains_matches_naive_reference():
    # The keep-everything closure must agree with the minimal representation
    # on every membership query.
    rng = SplitMix64(31)
    for _ in range(300):
        xs = random_clause_set(rng)
        c = random_clause(rng)
        setup = close(xs)
        expected = naive.vp_contains(
            naive.up_closure([naive.clause_set(x) for x in xs]), naive.clause_set(c)
        )
        assert contains(setup, c) == expected


def test_minimal_form_invariants():
    rng = SplitMix64(37)
    for _ in range(200):
        s = close(random_clause_set(rng))
        members = list(s.minimal)
        for a, b in itertools.permutations(members, 2):
            assert not subsumes(a, b)
        if s.inconsistent:
            assert members == [clause()]
        # Unit-propagation fixpoint: units cannot shorten any member to
        # something new.
        units = [m.literals[0] for m in members if len(m) == 1]
        for m in members:
            for u in units:
                reduced = unit_propagate(m, u)
                assert contains(s, reduced)


def test_tautologous_clauses_are_kept():
    taut = clause(lit("f", "T"), lit("f", "T", positive=False))
    s = close([taut])
    assert taut in s.minimal
