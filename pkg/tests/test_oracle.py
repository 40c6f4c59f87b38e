import itertools

import pytest

from splitbelief.gadgets import threshold_subcircuit
from splitbelief.generate import SplitMix64
from splitbelief.lang import Lit, Not, Or, Term
from splitbelief.oracle import (
    Gate,
    OracleError,
    Qbf,
    circuit_eval,
    entails,
    make_circuit,
    qbf_eval,
    qwcs_eval,
    world_eval,
)
from splitbelief.suites import random_anti_monotone_circuit, random_monotone_circuit
from conftest import clause, father_kb, father_query, lit


def test_world_eval_examples():
    w = {Term("f"): "T", Term("g"): "F"}
    assert world_eval(w, Lit(lit("f", "T")))
    assert world_eval(w, Lit(lit("f", "F", positive=False)))
    assert not world_eval(w, Not(Or(Lit(lit("f", "T")), Lit(lit("g", "F")))))
    with pytest.raises(OracleError):
        world_eval(w, Lit(lit("missing", "T")))


def test_entails_examples():
    assert entails(father_kb(), father_query())
    assert not entails([], Lit(lit("f", "T")))
    assert entails([clause(lit("f", "T"))], Lit(lit("f", "F", positive=False)))


def test_entails_with_empty_clause_is_vacuous():
    assert entails([clause()], Lit(lit("f", "T")))


def test_one_extra_name_is_enough():
    rng = SplitMix64(43)
    terms = [Term("f"), Term("g")]
    names = ["A", "B"]
    for _ in range(150):
        kb = []
        for _ in range(rng.randint(0, 3)):
            kb.append(
                clause(
                    *[
                        lit(terms[rng.randrange(2)].symbol, names[rng.randrange(2)], rng.boolean())
                        for _ in range(rng.randint(1, 2))
                    ]
                )
            )
        goal = Lit(lit(terms[rng.randrange(2)].symbol, names[rng.randrange(2)], rng.boolean()))
        assert entails(kb, goal, extra_names=1) == entails(kb, goal, extra_names=2)


def test_qbf_eval_examples():
    assert not qbf_eval(Qbf((("a", 1),), ((1,),)))
    assert qbf_eval(Qbf((("a", 1), ("e", 2)), ((1, -2), (-1, 2))))
    assert qbf_eval(Qbf((("e", 1), ("a", 2)), ((1, 2),)))


def test_qbf_validation():
    with pytest.raises(OracleError):
        Qbf((("a", 1), ("e", 1)), ())
    with pytest.raises(OracleError):
        Qbf((("a", 1),), ((2,),))
    with pytest.raises(OracleError):
        Qbf((("x", 1),), ())


def test_circuit_eval_examples():
    c = make_circuit(
        {"a": Gate("input"), "b": Gate("input"), "o": Gate("or", ("a", "b"))},
        "o",
        [("a", "b")],
        [1],
    )
    assert circuit_eval(c, {"a"})
    g = make_circuit(
        {"a": Gate("input"), "b": Gate("input"), "o": Gate("and", ("a", "b"))},
        "o",
        [("a", "b")],
        [1],
    )
    assert not circuit_eval(g, {"a"})
    th = threshold_subcircuit(3, 2)
    assert circuit_eval(th, {"x1", "x2"})
    assert not circuit_eval(th, {"x3"})


def test_make_circuit_validation():
    with pytest.raises(OracleError):  # cycle
        make_circuit(
            {"a": Gate("input"), "x": Gate("and", ("a", "y")), "y": Gate("or", ("x",))},
            "x",
            [("a",)],
            [1],
        )
    with pytest.raises(OracleError):  # undefined argument
        make_circuit({"x": Gate("or", ("a",))}, "x", [], [])
    with pytest.raises(OracleError):  # weights arity
        make_circuit(
            {"a": Gate("input"), "x": Gate("or", ("a",))}, "x", [("a",)], [1, 1]
        )
    with pytest.raises(OracleError):  # output feeds another node
        make_circuit(
            {"a": Gate("input"), "x": Gate("or", ("a",)), "y": Gate("or", ("x",))},
            "x",
            [("a",)],
            [1],
        )


def test_qwcs_eval_examples():
    two_or = make_circuit(
        {"a": Gate("input"), "b": Gate("input"), "o": Gate("or", ("a", "b"))},
        "o",
        [("a", "b")],
        [1],
    )
    assert qwcs_eval(two_or, "exact", kinds=("exists",))
    assert qwcs_eval(two_or, "exact")  # universal singleton supports
    assert qwcs_eval(two_or, "realizable")

    atleast2 = threshold_subcircuit(3, 2)
    universal = make_circuit(
        dict(atleast2.node_map), atleast2.output, atleast2.blocks, (2,)
    )
    assert qwcs_eval(universal, "exact")
    assert not qwcs_eval(universal, "realizable")


def test_monotone_circuits_are_monotone():
    rng = SplitMix64(47)
    for _ in range(25):
        c = random_monotone_circuit(rng)
        inputs = sorted(c.inputs)
        if len(inputs) > 8:
            continue
        for r in range(len(inputs) + 1):
            for chosen in itertools.combinations(inputs, r):
                base = circuit_eval(c, set(chosen))
                for extra in inputs:
                    assert circuit_eval(c, set(chosen) | {extra}) >= base


def test_anti_monotone_circuits_are_antitone():
    rng = SplitMix64(53)
    for _ in range(25):
        c = random_anti_monotone_circuit(rng)
        assert c.is_anti_monotone
        inputs = sorted(c.inputs)
        for r in range(len(inputs) + 1):
            for chosen in itertools.combinations(inputs, r):
                base = circuit_eval(c, set(chosen))
                for extra in inputs:
                    assert circuit_eval(c, set(chosen) | {extra}) <= base


def test_flags():
    mono = random_monotone_circuit(SplitMix64(1))
    assert mono.is_monotone
    anti = random_anti_monotone_circuit(SplitMix64(1))
    assert not anti.is_monotone and anti.is_anti_monotone
