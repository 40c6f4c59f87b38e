"""Instance builders: QBF and weighted-circuit problems as reasoning instances.

Each reduction encodes its source problem as clauses whose unit propagation
mirrors the source semantics, wraps the goal with the ordering gadget so the
solver must spend its case splits in the prescribed order, and returns a
reasoning instance whose answer matches the source problem (validated against
the brute-force oracles at desk scale).
"""

from __future__ import annotations

import re

from .gadgets import SKIP_NAME, Block, GadgetError, build_ordering
from .lang import (
    Clause,
    Formula,
    IDENT_RE,
    Lit,
    Literal,
    Term,
    canonical_clause,
    conj_all,
    negate,
    or_all,
)
from .oracle import Circuit, Qbf
from .solver import Instance

TRUE_NAME = "T"


class ReductionError(ValueError):
    """Input outside the reduction's domain."""


def _check_node_ids(circuit: Circuit) -> None:
    for n, _ in circuit.nodes:
        if not IDENT_RE.match(n):
            raise ReductionError("node id %r is not a plain identifier" % n)


# QBF -> limited belief ---------------------------------------------------------


def reduce_qbf(qbf: Qbf) -> Instance:
    """Encode a true-QBF question as a reasoning instance.

    A universal variable v becomes one term xv split over all names (value T
    reads as true, any other committed value as false, the skip name W
    escapes); an existential v becomes a pair xv/xvn of which exactly one is
    committed to T, choosing the polarity.  The ordering gadget forces the
    splits to follow the quantifier prefix outermost-first, and the level
    equals the number of quantifiers.
    """
    if not qbf.quantifiers:
        raise ReductionError("prefix must quantify at least one variable")
    if not qbf.matrix:
        raise ReductionError("matrix must contain at least one clause")
    if any(not c for c in qbf.matrix):
        raise ReductionError("matrix may not contain an empty clause")

    k = len(qbf.quantifiers)
    pos_term: dict[int, Term] = {}
    neg_term: dict[int, Term] = {}
    blocks: list[Block] = []  # innermost quantifier first: split last
    for kind, var in reversed(qbf.quantifiers):
        f = Term("x%d" % var)
        pos_term[var] = f
        if kind == "a":
            blocks.append(Block(frozenset((f,)), (Literal(f, False, SKIP_NAME),)))
        else:
            f2 = Term("x%dn" % var)
            neg_term[var] = f2
            blocks.append(
                Block(
                    frozenset((f, f2)),
                    (Literal(f, True, TRUE_NAME), Literal(f2, True, TRUE_NAME)),
                )
            )

    matrix_parts = []
    for clause in qbf.matrix:
        lits = []
        for sv in clause:
            var = abs(sv)
            if sv > 0:
                lits.append(Lit(Literal(pos_term[var], True, TRUE_NAME)))
            elif var in neg_term:
                lits.append(Lit(Literal(neg_term[var], True, TRUE_NAME)))
            else:
                lits.append(Lit(Literal(pos_term[var], False, TRUE_NAME)))
        matrix_parts.append(or_all(lits))
    matrix_formula = conj_all(matrix_parts)

    escapes = [Lit(negate(l)) for b in blocks for l in b.literals]
    base = or_all(escapes + [matrix_formula])
    out = build_ordering([], blocks, base, k)
    return Instance(out.clauses, out.query, k)


# Circuits -> limited belief ----------------------------------------------------


def _value_term(node: str) -> Term:
    return Term("v_" + node)


def _node_name(node: str) -> str:
    return "n_" + node


def _gate_clauses(circuit: Circuit, clauses: list) -> None:
    for n, g in circuit.nodes:
        if g.kind == "and":
            clauses.append(
                canonical_clause(
                    [Literal(_value_term(w), False, TRUE_NAME) for w in g.args]
                    + [Literal(_value_term(n), True, TRUE_NAME)]
                )
            )
        elif g.kind == "or":
            for w in g.args:
                clauses.append(
                    canonical_clause(
                        [
                            Literal(_value_term(w), False, TRUE_NAME),
                            Literal(_value_term(n), True, TRUE_NAME),
                        ]
                    )
                )


def _quantified_circuit_instance(circuit: Circuit, kinds) -> Instance:
    if not circuit.is_monotone:
        raise ReductionError("circuit must be monotone")
    _check_node_ids(circuit)
    clauses: list[Clause] = []
    blocks: list[Block] = []  # lexicographic (block, selector) order: split first
    for bi, members in enumerate(circuit.blocks):
        weight = circuit.weights[bi]
        xs = sorted(members)
        if kinds[bi] == "forall":
            for j in range(1, weight + 1):
                sel = Term("s%d_%d" % (bi + 1, j))
                for x in xs:
                    clauses.append(
                        canonical_clause(
                            [
                                Literal(sel, False, _node_name(x)),
                                Literal(_value_term(x), True, TRUE_NAME),
                            ]
                        )
                    )
                clauses.append(
                    canonical_clause(
                        [Literal(sel, True, _node_name(x)) for x in xs]
                        + [Literal(sel, True, SKIP_NAME)]
                    )
                )
                blocks.append(
                    Block(frozenset((sel,)), (Literal(sel, False, SKIP_NAME),))
                )
        else:
            for j in range(1, weight + 1):
                sels = {x: Term("s_%s_%d" % (x, j)) for x in xs}
                for x in xs:
                    clauses.append(
                        canonical_clause(
                            [
                                Literal(sels[x], False, TRUE_NAME),
                                Literal(_value_term(x), True, TRUE_NAME),
                            ]
                        )
                    )
                blocks.append(
                    Block(
                        frozenset(sels.values()),
                        tuple(Literal(sels[x], True, TRUE_NAME) for x in xs),
                    )
                )
    _gate_clauses(circuit, clauses)
    level = sum(circuit.weights)
    escapes = [Lit(negate(l)) for b in blocks for l in b.literals]
    goal = Lit(Literal(_value_term(circuit.output), True, TRUE_NAME))
    base = or_all(escapes + [goal])
    out = build_ordering(clauses, list(reversed(blocks)), base, level)
    return Instance(out.clauses, out.query, level)


def reduce_qmcs(circuit: Circuit) -> Instance:
    """Quantified weighted satisfiability of a monotone circuit.

    Blocks alternate universal/existential in index order (first universal).
    A universal block gets one selector term per weight unit, split over the
    block's input names with W as the vacuous escape; an existential block
    chooses, per weight unit, which input's selector to commit to T.  The
    answer matches the realizable-weight oracle, which quantifies over
    supports of weight-many picks with repetition.
    """
    kinds = ["forall" if i % 2 == 0 else "exists" for i in range(len(circuit.blocks))]
    return _quantified_circuit_instance(circuit, kinds)


def reduce_wmcs(circuit: Circuit, weight: int) -> Instance:
    """Weighted satisfiability of a monotone circuit: one existential block.

    The selector machinery needs no universal names, so apart from the gadget
    value the encoding mentions only the name T.
    """
    if len(circuit.blocks) != 1:
        raise ReductionError("weighted satisfiability takes a single input block")
    if weight != circuit.weights[0]:
        circuit = Circuit(circuit.nodes, circuit.output, circuit.blocks, (weight,))
    return _quantified_circuit_instance(circuit, ["exists"])


def reduce_wamcs_complement(circuit: Circuit, weight: int) -> Instance:
    """YES iff every weight-k assignment falsifies an anti-monotone circuit.

    Node falsity is tracked by disequalities on a single term f against one
    name per non-input node.  Selector splits pick which inputs are true,
    pairwise-distinctness clauses make repeated picks vacuous, so exactly the
    injective selections of k inputs are exercised; falsity then propagates
    from the not-nodes to the output.

    The goal cannot test ``f != n_v0`` directly: any clause that pairs that
    disequality with further positive f-literals (the output's own falsity
    clause does) subsumes such a goal outright, since ``f=n`` weakens to every
    ``f!=n'``.  A separate result term bridges the gap: ``f=n_v0 | r=T`` turns
    the derived output-falsity unit into ``r=T``, which nothing else covers.
    """
    if not circuit.is_anti_monotone:
        raise ReductionError("circuit must be anti-monotone")
    if weight < 1:
        raise ReductionError("weight must be at least 1")
    _check_node_ids(circuit)

    consumers: dict[str, str] = {}
    for n, g in circuit.nodes:
        if g.kind == "not":
            consumers[g.args[0]] = n
    xs = sorted(circuit.inputs)
    not_of = {x: consumers[x] for x in xs}

    f = Term("f")
    sels = [Term("s%d" % i) for i in range(1, weight + 1)]
    clauses: list[Clause] = []
    for sel in sels:
        for x in xs:
            vname = _node_name(not_of[x])
            clauses.append(
                canonical_clause(
                    [Literal(sel, False, vname), Literal(f, False, vname)]
                )
            )
        clauses.append(
            canonical_clause(
                [Literal(sel, True, _node_name(not_of[x])) for x in xs]
                + [Literal(sel, True, SKIP_NAME)]
            )
        )
    for i in range(len(sels)):
        for j in range(i + 1, len(sels)):
            for x in xs:
                vname = _node_name(not_of[x])
                clauses.append(
                    canonical_clause(
                        [
                            Literal(sels[i], False, vname),
                            Literal(sels[j], False, vname),
                        ]
                    )
                )
    for n, g in circuit.nodes:
        if g.kind == "or":
            clauses.append(
                canonical_clause(
                    [Literal(f, True, _node_name(w)) for w in g.args]
                    + [Literal(f, False, _node_name(n))]
                )
            )
        elif g.kind == "and":
            for w in g.args:
                clauses.append(
                    canonical_clause(
                        [
                            Literal(f, True, _node_name(w)),
                            Literal(f, False, _node_name(n)),
                        ]
                    )
                )
    result = Term("r")
    clauses.append(
        canonical_clause(
            [
                Literal(f, True, _node_name(circuit.output)),
                Literal(result, True, TRUE_NAME),
            ]
        )
    )

    blocks = [Block(frozenset((sel,)), (Literal(sel, False, SKIP_NAME),)) for sel in sels]
    escapes = [Lit(Literal(sel, True, SKIP_NAME)) for sel in sels]
    goal = Lit(Literal(result, True, TRUE_NAME))
    base = or_all(escapes + [goal])
    out = build_ordering(clauses, list(reversed(blocks)), base, weight)
    return Instance(out.clauses, out.query, weight)
