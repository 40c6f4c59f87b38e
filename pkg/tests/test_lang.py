import itertools

import pytest

from splitbelief.lang import (
    Believe,
    LangError,
    Lit,
    Literal,
    NestedBeliefError,
    Not,
    Or,
    Term,
    as_clause,
    canonical_clause,
    clause_to_formula,
    complementary,
    conj,
    conj_all,
    formula_names,
    formula_terms,
    is_objective,
    negate,
    or_all,
)
from conftest import lit


def test_negate_flips_sign_only():
    assert negate(lit("f", "T")) == lit("f", "T", positive=False)
    assert negate(lit("rich", "T", args=("Frank",))) == lit(
        "rich", "T", positive=False, args=("Frank",)
    )


def test_negate_is_an_involution():
    for positive in (True, False):
        l = lit("f", "T", positive=positive)
        assert negate(negate(l)) == l


def test_complementary_defining_cases():
    assert complementary(lit("f", "T"), lit("f", "T", positive=False))
    assert complementary(lit("f", "T"), lit("f", "F"))
    assert not complementary(lit("f", "T", positive=False), lit("f", "F", positive=False))


def literal_universe():
    return [
        Literal(Term(s), p, n)
        for s in ("f", "g")
        for p in (True, False)
        for n in ("A", "B")
    ]


def test_complementary_exhaustive_against_pattern_spec():
    # Independent restatement of the two defining patterns, checked on every
    # pair over two terms and two names.
    def spec(a, b):
        same_term = a.term == b.term
        eq_neq = a.positive != b.positive and a.name == b.name
        eq_eq = a.positive and b.positive and a.name != b.name
        return same_term and (eq_neq or eq_eq)

    for a, b in itertools.product(literal_universe(), repeat=2):
        assert complementary(a, b) == spec(a, b)


def test_complementary_symmetric_irreflexive_distinct_terms():
    universe = literal_universe()
    for a, b in itertools.product(universe, repeat=2):
        assert complementary(a, b) == complementary(b, a)
        if a.term != b.term:
            assert not complementary(a, b)
    for a in universe:
        assert not complementary(a, a)


def test_canonical_clause_dedups_and_sorts():
    c = canonical_clause([lit("f", "T"), lit("f", "T")])
    assert list(c) == [lit("f", "T")]
    c = canonical_clause([lit("g", "F"), lit("f", "T")])
    assert [str(l) for l in c] == ["f=T", "g=F"]
    assert len(canonical_clause([])) == 0


def test_canonical_clause_permutation_invariant_and_idempotent():
    lits = [lit("f", "T"), lit("g", "F", positive=False), lit("f", "B")]
    reference = canonical_clause(lits)
    for perm in itertools.permutations(lits):
        assert canonical_clause(perm) == reference
    assert canonical_clause(reference.literals) == reference


def test_term_ordering_is_by_symbol_then_args():
    terms = [Term("g"), Term("f", ("B",)), Term("f", ("A",)), Term("f")]
    ordered = sorted(terms, key=Term.sort_key)
    assert [str(t) for t in ordered] == ["f", "f(A)", "f(B)", "g"]


def test_as_clause_normalizes_leaves():
    f = Or(Lit(lit("f", "T")), Not(Lit(lit("g", "F"))))
    assert as_clause(f) == canonical_clause([lit("f", "T"), lit("g", "F", positive=False)])
    assert as_clause(Lit(lit("h", "T"))) == canonical_clause([lit("h", "T")])
    assert as_clause(Or(Lit(lit("f", "T")), Believe(0, Lit(lit("g", "F"))))) is None


def test_as_clause_double_negation_at_leaves():
    inner = Lit(lit("f", "T"))
    assert as_clause(Not(Not(inner))) == canonical_clause([lit("f", "T")])
    assert as_clause(Not(Not(Not(inner)))) == canonical_clause(
        [lit("f", "T", positive=False)]
    )
    # A doubly negated disjunction is not a clause leaf.
    assert as_clause(Or(inner, Not(Not(Or(inner, inner))))) is None


def test_conjunction_is_stored_desugared():
    a, b = Lit(lit("f", "T")), Lit(lit("g", "T"))
    assert conj(a, b) == Not(Or(Not(a), Not(b)))
    assert conj_all([a, b, a]) == conj(a, conj(b, a))


def test_or_all_right_nested():
    parts = [Lit(lit("f", "T")), Lit(lit("g", "T")), Lit(lit("h", "T"))]
    assert or_all(parts) == Or(parts[0], Or(parts[1], parts[2]))
    with pytest.raises(LangError):
        or_all([])


def test_believe_rejects_nesting_and_negative_levels():
    body = Lit(lit("f", "T"))
    Believe(0, body)
    with pytest.raises(NestedBeliefError):
        Believe(1, Believe(0, body))
    with pytest.raises(NestedBeliefError):
        Believe(1, Or(body, Not(Believe(0, body))))
    with pytest.raises(LangError):
        Believe(-1, body)


def test_objectivity_scan():
    body = Lit(lit("f", "T"))
    assert is_objective(Or(body, Not(body)))
    assert not is_objective(Not(Believe(2, body)))


def test_formula_terms_and_names_include_argument_names():
    f = Or(Lit(lit("rich", "T", args=("Frank",))), Believe(1, Lit(lit("f", "A"))))
    assert formula_terms(f) == {Term("rich", ("Frank",)), Term("f")}
    assert formula_names(f) == {"T", "Frank", "A"}


def test_clause_to_formula_round_trips_through_as_clause():
    c = canonical_clause([lit("f", "T"), lit("g", "B", positive=False)])
    assert as_clause(clause_to_formula(c)) == c
    with pytest.raises(LangError):
        clause_to_formula(canonical_clause([]))
