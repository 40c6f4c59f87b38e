"""Brute-force reference semantics: possible worlds, QBF and circuit evaluators.

Everything here is desk-scale by design.  World enumeration ranges over the
mentioned names plus one shared extra name: a literal can only relate a term
to a mentioned name, so any two unmentioned values are observationally
identical and a single stand-in suffices (checked by a property test against
a two-extra-names run).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .lang import (
    Believe,
    Clause,
    Formula,
    FRESH_NAME,
    LangError,
    Lit,
    Not,
    Or,
    Term,
    formula_names,
    formula_terms,
    is_objective,
)


class OracleError(ValueError):
    """Ill-formed input to a reference evaluator."""


# Possible worlds ------------------------------------------------------------

World = dict  # Term -> name; total over the declared term universe


def world_eval(world: World, formula: Formula) -> bool:
    """Classical truth of an objective formula in a world."""
    if isinstance(formula, Lit):
        lit = formula.literal
        try:
            value = world[lit.term]
        except KeyError:
            raise OracleError("world does not map term %s" % lit.term) from None
        return (value == lit.name) == lit.positive
    if isinstance(formula, Not):
        return not world_eval(world, formula.body)
    if isinstance(formula, Or):
        return world_eval(world, formula.left) or world_eval(world, formula.right)
    raise OracleError("world evaluation is defined for objective formulas only")


def _clause_true(world: World, clause: Clause) -> bool:
    for lit in clause:
        if (world[lit.term] == lit.name) == lit.positive:
            return True
    return False


def _mentioned(clauses, formula: Formula | None):
    terms: set[Term] = set()
    names: set[str] = set()
    for c in clauses:
        terms.update(c.terms())
        names.update(c.names())
    if formula is not None:
        terms.update(formula_terms(formula))
        names.update(formula_names(formula))
    return terms, names


def iter_worlds(terms, names):
    """All total assignments of the given names to the given terms."""
    terms = sorted(terms, key=Term.sort_key)
    for values in itertools.product(sorted(names), repeat=len(terms)):
        yield dict(zip(terms, values))


def entails(clauses, formula: Formula, extra_names: int = 1) -> bool:
    """Classical entailment by enumeration of all finite worlds.

    Worlds map every mentioned term into the mentioned names plus
    ``extra_names`` shared fresh values (one suffices; the knob exists so the
    sufficiency claim itself can be tested).
    """
    if not is_objective(formula):
        raise OracleError("classical entailment is defined for objective formulas")
    clauses = list(clauses)
    terms, names = _mentioned(clauses, formula)
    names.add(FRESH_NAME)
    for i in range(1, extra_names):
        names.add("%s%d" % (FRESH_NAME, i))
    for world in iter_worlds(terms, names):
        if all(_clause_true(world, c) for c in clauses):
            if not world_eval(world, formula):
                return False
    return True


# Quantified Boolean formulas -------------------------------------------------


@dataclass(frozen=True)
class Qbf:
    """A fully quantified Boolean formula with CNF matrix.

    ``quantifiers`` lists (kind, variable) pairs outermost first, with kind
    ``'a'`` (universal) or ``'e'`` (existential).  Matrix clauses are tuples
    of signed variable numbers, so negation occurs only at variables.
    """

    quantifiers: tuple[tuple[str, int], ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for kind, var in self.quantifiers:
            if kind not in ("a", "e"):
                raise OracleError("unknown quantifier kind %r" % kind)
            if var in seen:
                raise OracleError("variable %d quantified twice" % var)
            seen.add(var)
        for clause in self.matrix:
            for sv in clause:
                if sv == 0 or abs(sv) not in seen:
                    raise OracleError("matrix mentions unquantified variable %d" % sv)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(v for _, v in self.quantifiers)


def qbf_eval(qbf: Qbf) -> bool:
    """Truth by recursive expansion, outermost quantifier first."""
    if len(qbf.quantifiers) > 22:
        raise OracleError("brute-force evaluation is limited to small prefixes")

    matrix = qbf.matrix

    def matrix_true(assignment: dict) -> bool:
        for clause in matrix:
            if not any(assignment[abs(sv)] == (sv > 0) for sv in clause):
                return False
        return True

    def rec(i: int, assignment: dict) -> bool:
        if i == len(qbf.quantifiers):
            return matrix_true(assignment)
        kind, var = qbf.quantifiers[i]
        results = []
        for value in (False, True):
            assignment[var] = value
            results.append(rec(i + 1, assignment))
        del assignment[var]
        if kind == "a":
            return results[0] and results[1]
        return results[0] or results[1]

    return rec(0, {})


# Circuits --------------------------------------------------------------------

GATE_KINDS = ("input", "not", "and", "or")


@dataclass(frozen=True)
class Gate:
    kind: str
    args: tuple[str, ...] = ()


@dataclass(frozen=True)
class Circuit:
    """A DAG of input/not/and/or nodes with one output node.

    ``nodes`` is topologically ordered (arguments precede users).  Inputs are
    partitioned into blocks with one target weight per block.
    """

    nodes: tuple[tuple[str, Gate], ...]
    output: str
    blocks: tuple[tuple[str, ...], ...]
    weights: tuple[int, ...]
    node_map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "node_map", dict(self.nodes))

    @property
    def inputs(self) -> tuple[str, ...]:
        return tuple(n for n, g in self.nodes if g.kind == "input")

    def gates(self):
        return [(n, g) for n, g in self.nodes if g.kind != "input"]

    def block_of(self, input_id: str) -> int:
        for i, block in enumerate(self.blocks):
            if input_id in block:
                return i
        raise OracleError("input %s is in no block" % input_id)

    @property
    def is_monotone(self) -> bool:
        return all(g.kind != "not" for _, g in self.nodes)

    @property
    def is_anti_monotone(self) -> bool:
        """Inputs feed exactly one not-node each and no other not-node exists."""
        consumers: dict[str, list[str]] = {n: [] for n, _ in self.nodes}
        for n, g in self.nodes:
            for a in g.args:
                consumers[a].append(n)
        for n, g in self.nodes:
            if g.kind == "input":
                cs = consumers[n]
                if len(cs) != 1 or self.node_map[cs[0]].kind != "not":
                    return False
            elif g.kind == "not":
                if self.node_map[g.args[0]].kind != "input":
                    return False
        return True


def make_circuit(nodes: dict, output: str, blocks, weights) -> Circuit:
    """Validate and topologically order a circuit given as id -> Gate."""
    if output not in nodes:
        raise OracleError("undefined output node %s" % output)
    for n, g in nodes.items():
        if g.kind not in GATE_KINDS:
            raise OracleError("unknown gate kind %r" % g.kind)
        if g.kind == "input" and g.args:
            raise OracleError("input %s takes no arguments" % n)
        if g.kind == "not" and len(g.args) != 1:
            raise OracleError("not-node %s needs exactly one argument" % n)
        if g.kind in ("and", "or") and not g.args:
            raise OracleError("%s-node %s needs at least one argument" % (g.kind, n))
        for a in g.args:
            if a not in nodes:
                raise OracleError("node %s uses undefined node %s" % (n, a))

    order: list[tuple[str, Gate]] = []
    state: dict[str, int] = {}

    def visit(n: str, trail: tuple) -> None:
        mark = state.get(n)
        if mark == 2:
            return
        if mark == 1:
            raise OracleError("cycle through node %s" % n)
        state[n] = 1
        for a in nodes[n].args:
            visit(a, trail)
        state[n] = 2
        order.append((n, nodes[n]))

    for n in sorted(nodes):
        visit(n, ())

    for n, g in nodes.items():
        if output in g.args:
            raise OracleError("output node %s may not feed node %s" % (output, n))

    inputs = {n for n, g in nodes.items() if g.kind == "input"}
    blocks = tuple(tuple(b) for b in blocks)
    weights = tuple(int(w) for w in weights)
    covered: set[str] = set()
    for block in blocks:
        if not block:
            raise OracleError("empty input block")
        for x in block:
            if x not in inputs:
                raise OracleError("block member %s is not an input" % x)
            if x in covered:
                raise OracleError("input %s assigned to two blocks" % x)
            covered.add(x)
    if covered != inputs:
        raise OracleError("blocks do not cover all inputs")
    if len(weights) != len(blocks):
        raise OracleError("weights arity %d does not match %d blocks" % (len(weights), len(blocks)))
    if any(w < 1 for w in weights):
        raise OracleError("weights must be at least 1")
    return Circuit(tuple(order), output, blocks, weights)


def circuit_eval(circuit: Circuit, true_inputs) -> bool:
    """Topological evaluation under the assignment setting ``true_inputs``."""
    true_inputs = set(true_inputs)
    unknown = true_inputs.difference(circuit.inputs)
    if unknown:
        raise OracleError("not inputs of this circuit: %s" % sorted(unknown))
    value: dict[str, bool] = {}
    for n, g in circuit.nodes:
        if g.kind == "input":
            value[n] = n in true_inputs
        elif g.kind == "not":
            value[n] = not value[g.args[0]]
        elif g.kind == "and":
            value[n] = all(value[a] for a in g.args)
        else:
            value[n] = any(value[a] for a in g.args)
    return value[circuit.output]


def _supports(block, weight: int, mode: str):
    """The admissible true-sets for one block under the given weight mode."""
    if mode == "exact":
        yield from itertools.combinations(block, weight)
    elif mode == "realizable":
        # Supports of `weight` picks with repetition: every size 1..weight.
        for size in range(1, min(weight, len(block)) + 1):
            yield from itertools.combinations(block, size)
    else:
        raise OracleError("unknown weight mode %r" % mode)


def qwcs_eval(circuit: Circuit, mode: str = "exact", kinds=None) -> bool:
    """Quantified weighted circuit satisfiability by brute force.

    Blocks alternate universal/existential in index order, first block
    universal, unless explicit ``kinds`` ('forall'/'exists' per block) are
    given.  ``exact`` mode quantifies over true-sets of exactly the block
    weight; ``realizable`` mode over supports of that many picks with
    repetition, i.e. sizes 1..weight.
    """
    blocks = circuit.blocks
    weights = circuit.weights
    if kinds is None:
        kinds = tuple("forall" if i % 2 == 0 else "exists" for i in range(len(blocks)))
    else:
        kinds = tuple(kinds)
        if len(kinds) != len(blocks):
            raise OracleError("kinds arity does not match block count")
        if any(k not in ("forall", "exists") for k in kinds):
            raise OracleError("kinds must be 'forall' or 'exists'")

    def rec(i: int, chosen: set) -> bool:
        if i == len(blocks):
            return circuit_eval(circuit, chosen)
        picks = [set(s) for s in _supports(blocks[i], weights[i], mode)]
        if kinds[i] == "forall":
            return all(rec(i + 1, chosen | s) for s in picks)
        return any(rec(i + 1, chosen | s) for s in picks)

    return rec(0, set())
