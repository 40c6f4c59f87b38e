"""Seeded property suites validating the solver against independent oracles.

Every suite is a deterministic function of (seed, count).  Failures carry the
instance index so a run can be reproduced; notes carry informational output
such as the exact-versus-realizable weight-mode comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import engine
from .gadgets import (
    Block,
    build_ordering,
    build_split_early,
    de_morgan,
    monotonize,
    threshold_subcircuit,
    verify_gadget_preconditions,
)
from .generate import GenParams, SplitMix64, gen_random_instance
from .lang import (
    Believe,
    FRESH_NAME,
    Lit,
    Literal,
    Term,
    canonical_clause,
    formula_names,
    formula_terms,
    negate,
    or_all,
)
from .oracle import Gate, Qbf, circuit_eval, entails, make_circuit, qbf_eval, qwcs_eval
from .reductions import (
    reduce_qbf,
    reduce_qmcs,
    reduce_wamcs_complement,
    reduce_wmcs,
)
from .solver import Instance, SplitContext, decide, holds, make_context, split_candidates


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = "%s %-14s checked=%d failures=%d" % (
            status,
            self.name,
            self.checked,
            len(self.failures),
        )
        return line


def _rng_for(seed: int, index: int) -> SplitMix64:
    return SplitMix64((seed * 0x9E3779B9 + index) & 0xFFFFFFFFFFFFFFFF)


def _random_params(rng: SplitMix64) -> GenParams:
    return GenParams(
        terms=rng.randint(1, 4),
        names=rng.randint(1, 3),
        clauses=rng.randint(1, 6),
        width=rng.randint(1, 3),
        level=0,
    )


def _random_instance(seed: int, index: int) -> Instance:
    rng = _rng_for(seed, index)
    params = _random_params(rng)
    return gen_random_instance(rng.next_u64(), params)


# Level-structure suites ---------------------------------------------------------


def suite_monotone(seed: int, count: int) -> SuiteResult:
    """A YES at level k stays a YES at level k+1."""
    res = SuiteResult("monotone")
    for i in range(count):
        inst = _random_instance(seed, i)
        answers = [decide(inst.with_level(k), memo=True).answer for k in range(4)]
        for k in range(3):
            if answers[k] and not answers[k + 1]:
                res.fail("instance %d: YES at level %d, NO at level %d" % (i, k, k + 1))
        res.checked += 1
    return res


def suite_stabilize(seed: int, count: int) -> SuiteResult:
    """Verdicts stop changing once the level reaches the term count."""
    res = SuiteResult("stabilize")
    for i in range(count):
        inst = _random_instance(seed, i)
        nterms = len(split_candidates(inst).terms)
        at = decide(inst.with_level(nterms), memo=True).answer
        above = decide(inst.with_level(nterms + 1), memo=True).answer
        if at != above:
            res.fail("instance %d: level %d gives %s but level %d gives %s"
                     % (i, nterms, at, nterms + 1, above))
        res.checked += 1
    return res


def suite_soundness(seed: int, count: int) -> SuiteResult:
    """A YES at any level implies classical entailment."""
    res = SuiteResult("soundness")
    for i in range(count):
        inst = _random_instance(seed, i)
        nterms = len(split_candidates(inst).terms)
        classical = entails(inst.kb, inst.query)
        for k in range(nterms + 1):
            if decide(inst.with_level(k), memo=True).answer and not classical:
                res.fail("instance %d: YES at level %d without entailment" % (i, k))
                break
        res.checked += 1
    return res


def suite_completeness(seed: int, count: int) -> SuiteResult:
    """At level = term count the verdict coincides with classical entailment."""
    res = SuiteResult("completeness")
    for i in range(count):
        inst = _random_instance(seed, i)
        nterms = len(split_candidates(inst).terms)
        limited = decide(inst.with_level(nterms), memo=True).answer
        classical = entails(inst.kb, inst.query)
        if limited != classical:
            res.fail("instance %d: level-%d verdict %s, classical %s"
                     % (i, nterms, limited, classical))
        res.checked += 1
    return res


def suite_fresh_name(seed: int, count: int) -> SuiteResult:
    """Renaming the fresh split value leaves every verdict unchanged."""
    res = SuiteResult("fresh-name")
    for i in range(count):
        inst = _random_instance(seed, i)
        ctx = split_candidates(inst)
        renamed = SplitContext(ctx.terms, ctx.names[:-1] + ("zz_unmentioned",))
        setup = engine.close(inst.kb)
        goal = Believe(inst.level, inst.query)
        if holds(setup, goal, ctx) != holds(setup, goal, renamed):
            res.fail("instance %d: verdict depends on the fresh name" % i)
        res.checked += 1
    return res


def suite_memo(seed: int, count: int) -> SuiteResult:
    """The result cache changes statistics only."""
    res = SuiteResult("memo")
    for i in range(count):
        inst = _random_instance(seed, i).with_level(2)
        plain = decide(inst, trace=True)
        cached = decide(inst, trace=True, memo=True)
        if plain.answer != cached.answer or plain.trace != cached.trace:
            res.fail("instance %d: cache changed the verdict or trace" % i)
        res.checked += 1
    return res


def suite_determinism(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("determinism")
    for i in range(count):
        inst = _random_instance(seed, i).with_level(2)
        if decide(inst, trace=True) != decide(inst, trace=True):
            res.fail("instance %d: two runs differ" % i)
        res.checked += 1
    return res


# Gadget suites -------------------------------------------------------------------


_GADGET_NAMES = ("A", "B")
_GADGET_S_TERMS = (Term("p"), Term("q"))
_GADGET_F_TERMS = (Term("g1"), Term("g2"))


def _random_base_clauses(rng: SplitMix64):
    clauses = []
    for _ in range(rng.randint(0, 2)):
        lits = [
            Literal(rng.choice(_GADGET_S_TERMS), rng.boolean(), rng.choice(_GADGET_NAMES))
            for _ in range(rng.randint(1, 2))
        ]
        clauses.append(canonical_clause(lits))
    return clauses


def _random_block(rng: SplitMix64, terms) -> Block:
    lits = tuple(
        Literal(t, rng.boolean(), rng.choice(_GADGET_NAMES)) for t in terms
    )
    return Block(frozenset(terms), lits)


def _draw_gadget_config(seed: int, index: int, nblocks: int):
    """Deterministically draw (clauses, blocks, alpha) meeting the hypothesis."""
    for attempt in range(200):
        rng = _rng_for(seed, index * 211 + attempt)
        clauses = _random_base_clauses(rng)
        if nblocks == 1:
            size = rng.randint(1, 2)
            blocks = [_random_block(rng, _GADGET_F_TERMS[:size])]
        else:
            blocks = [
                _random_block(rng, (_GADGET_F_TERMS[0],)),
                _random_block(rng, (_GADGET_F_TERMS[1],)),
            ]
        alpha = Lit(
            Literal(rng.choice(_GADGET_S_TERMS), rng.boolean(), rng.choice(_GADGET_NAMES))
        )
        if verify_gadget_preconditions(clauses, blocks):
            return clauses, blocks, alpha
    raise RuntimeError("no admissible gadget configuration found")


def _gadget_context(clauses, blocks, alpha, extra_terms=()):
    terms = set(extra_terms)
    names = set()
    for c in clauses:
        terms.update(c.terms())
        names.update(c.names())
    for b in blocks:
        terms.update(b.terms)
        for l in b.literals:
            names.add(l.name)
            names.update(l.term.args)
    terms.update(formula_terms(alpha))
    names.update(formula_names(alpha))
    return make_context(terms, names)


def suite_split_early(seed: int, count: int) -> SuiteResult:
    """Both sides of the forced-split equivalence agree, computed independently."""
    res = SuiteResult("split-early")
    for i in range(count):
        rng = _rng_for(seed, i)
        k = rng.randint(1, 2)
        clauses, blocks, alpha = _draw_gadget_config(seed, i, nblocks=1)
        block = blocks[0]
        out = build_split_early(clauses, block, k, alpha)
        left = decide(Instance(out.clauses, out.query, out.level), memo=True).answer

        reduced = or_all([Lit(negate(l)) for l in block.literals] + [alpha])
        ctx = _gadget_context(clauses, blocks, alpha)
        right = False
        for t in sorted(block.terms, key=Term.sort_key):
            if all(
                holds(
                    engine.close(list(clauses) + [canonical_clause([Literal(t, True, n)])]),
                    Believe(k - 1, reduced),
                    ctx,
                )
                for n in ctx.names
            ):
                right = True
                break
        if left != right:
            res.fail("config %d (k=%d): gadget %s, direct %s" % (i, k, left, right))
        res.checked += 1
    return res


def suite_ordering(seed: int, count: int) -> SuiteResult:
    """Two-block ordering equivalence against exhaustive split enumeration."""
    res = SuiteResult("ordering")
    for i in range(count):
        clauses, blocks, alpha = _draw_gadget_config(seed, i, nblocks=2)
        k = 2
        out = build_ordering(clauses, blocks, alpha, k)
        left = decide(Instance(out.clauses, out.query, out.level), memo=True).answer

        goal = or_all(
            [Lit(negate(l)) for b in blocks[:k] for l in b.literals] + [alpha]
        )
        ctx = _gadget_context(clauses, blocks, alpha)

        def rec(j: int, units) -> bool:
            if j == 0:
                setup = engine.close(list(clauses) + units)
                return holds(setup, goal, ctx)
            return any(
                all(
                    rec(j - 1, units + [canonical_clause([Literal(t, True, n)])])
                    for n in ctx.names
                )
                for t in sorted(blocks[j - 1].terms, key=Term.sort_key)
            )

        right = rec(k, [])
        if left != right:
            res.fail("config %d: gadget %s, direct %s" % (i, left, right))
        res.checked += 1
    return res


# Reduction suites ----------------------------------------------------------------


def random_qbf(rng: SplitMix64, max_vars: int = 3, max_clauses: int = 4) -> Qbf:
    nvars = rng.randint(1, max_vars)
    variables = list(range(1, nvars + 1))
    for i in range(nvars - 1, 0, -1):  # Fisher-Yates
        j = rng.randrange(i + 1)
        variables[i], variables[j] = variables[j], variables[i]
    quantifiers = tuple(("a" if rng.boolean() else "e", v) for v in variables)
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(1, min(3, nvars))
        chosen = list(range(1, nvars + 1))
        for i in range(nvars - 1, 0, -1):
            j = rng.randrange(i + 1)
            chosen[i], chosen[j] = chosen[j], chosen[i]
        clause = tuple(
            v if rng.boolean() else -v for v in sorted(chosen[:width])
        )
        clauses.append(clause)
    return Qbf(quantifiers, tuple(clauses))


def all_one_variable_qbfs():
    """Every prefix over one variable with every non-empty set of non-empty clauses."""
    clause_space = ((1,), (-1,), (1, -1))
    out = []
    for kind in ("a", "e"):
        for r in range(1, len(clause_space) + 1):
            for chosen in itertools.combinations(clause_space, r):
                out.append(Qbf(((kind, 1),), chosen))
    return out


def suite_qbf(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("qbf")
    for qbf in all_one_variable_qbfs():
        expected = qbf_eval(qbf)
        got = decide(reduce_qbf(qbf), memo=True).answer
        if got != expected:
            res.fail("1-var sweep %s: reduction %s, direct %s" % (qbf, got, expected))
        res.checked += 1
    for i in range(count):
        qbf = random_qbf(_rng_for(seed, i))
        expected = qbf_eval(qbf)
        got = decide(reduce_qbf(qbf), memo=True).answer
        if got != expected:
            res.fail("qbf %d: reduction %s, direct %s" % (i, got, expected))
        res.checked += 1
    return res


def random_monotone_circuit(rng: SplitMix64, max_gates: int = 6, max_blocks: int = 2):
    nblocks = rng.randint(1, max_blocks)
    nodes: dict = {}
    blocks = []
    pool = []
    for b in range(nblocks):
        size = rng.randint(2, 3)
        members = tuple("i%d_%d" % (b + 1, j + 1) for j in range(size))
        for x in members:
            nodes[x] = Gate("input")
            pool.append(x)
        blocks.append(members)
    ngates = rng.randint(1, max_gates)
    gate = None
    for g in range(ngates):
        kind = "and" if rng.boolean() else "or"
        a = rng.choice(pool)
        b = rng.choice(pool)
        if a == b and len(pool) > 1:
            b = pool[(pool.index(a) + 1) % len(pool)]
        gate = "g%d" % (g + 1)
        nodes[gate] = Gate(kind, (a, b))
        pool.append(gate)
    weights = [1] * nblocks
    return make_circuit(nodes, gate, blocks, weights)


def suite_qmcs(seed: int, count: int) -> SuiteResult:
    """Quantified reduction versus the realizable-weight oracle, with an
    informational report of exact-versus-realizable divergences."""
    res = SuiteResult("qmcs")
    divergences = 0
    for i in range(count):
        circuit = random_monotone_circuit(_rng_for(seed, i))
        realizable = qwcs_eval(circuit, "realizable")
        exact = qwcs_eval(circuit, "exact")
        if exact != realizable:
            divergences += 1
        got = decide(reduce_qmcs(circuit), memo=True).answer
        if got != realizable:
            res.fail("circuit %d: reduction %s, realizable oracle %s" % (i, got, realizable))
        res.checked += 1
    res.notes.append(
        "exact-vs-realizable weight modes diverged on %d of %d circuits"
        % (divergences, count)
    )
    return res


def suite_wmcs(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("wmcs")
    for i in range(count):
        rng = _rng_for(seed, i)
        circuit = random_monotone_circuit(rng, max_blocks=1)
        weight = rng.randint(1, 2)
        got = decide(reduce_wmcs(circuit, weight), memo=True).answer
        resized = make_circuit(
            dict(circuit.node_map), circuit.output, circuit.blocks, (weight,)
        )
        expected = qwcs_eval(resized, "realizable", kinds=("exists",))
        if got != expected:
            res.fail("circuit %d (k=%d): reduction %s, oracle %s" % (i, weight, got, expected))
        res.checked += 1
    return res


def random_anti_monotone_circuit(rng: SplitMix64, max_gates: int = 6):
    m = rng.randint(2, 4)
    nodes: dict = {}
    pool = []
    for i in range(m):
        x = "x%d" % (i + 1)
        nodes[x] = Gate("input")
        nodes["v%d" % (i + 1)] = Gate("not", (x,))
        pool.append("v%d" % (i + 1))
    ngates = rng.randint(1, max_gates)
    gate = None
    for g in range(ngates):
        kind = "and" if rng.boolean() else "or"
        a = rng.choice(pool)
        b = rng.choice(pool)
        if a == b and len(pool) > 1:
            b = pool[(pool.index(a) + 1) % len(pool)]
        gate = "g%d" % (g + 1)
        nodes[gate] = Gate(kind, (a, b))
        pool.append(gate)
    blocks = [tuple("x%d" % (i + 1) for i in range(m))]
    return make_circuit(nodes, gate, blocks, [1])


def suite_wamcs(seed: int, count: int) -> SuiteResult:
    res = SuiteResult("wamcs")
    for i in range(count):
        rng = _rng_for(seed, i)
        circuit = random_anti_monotone_circuit(rng)
        weight = rng.randint(1, 2)
        got = decide(reduce_wamcs_complement(circuit, weight), memo=True).answer
        expected = all(
            not circuit_eval(circuit, set(chosen))
            for chosen in itertools.combinations(sorted(circuit.inputs), weight)
        )
        if got != expected:
            res.fail("circuit %d (k=%d): reduction %s, exhaustive %s" % (i, weight, got, expected))
        res.checked += 1
    return res


def suite_threshold(seed: int, count: int, max_inputs: int = 6) -> SuiteResult:
    res = SuiteResult("threshold")
    for m in range(1, max_inputs + 1):
        inputs = ["x%d" % (i + 1) for i in range(m)]
        for t in range(1, m + 1):
            circuit = threshold_subcircuit(m, t)
            if not circuit.is_monotone:
                res.fail("threshold %d-of-%d contains a not-node" % (t, m))
            for r in range(m + 1):
                for chosen in itertools.combinations(inputs, r):
                    if circuit_eval(circuit, set(chosen)) != (r >= t):
                        res.fail("threshold %d-of-%d wrong on %s" % (t, m, chosen))
            res.checked += 1
    return res


def random_general_circuit(rng: SplitMix64, max_gates: int = 6):
    nblocks = rng.randint(1, 2)
    nodes: dict = {}
    blocks = []
    pool = []
    for b in range(nblocks):
        size = rng.randint(2, 3)
        members = tuple("i%d_%d" % (b + 1, j + 1) for j in range(size))
        for x in members:
            nodes[x] = Gate("input")
            pool.append(x)
        blocks.append(members)
    ngates = rng.randint(1, max_gates)
    gate = pool[0]
    for g in range(ngates):
        roll = rng.randrange(3)
        gate = "g%d" % (g + 1)
        if roll == 0:
            nodes[gate] = Gate("not", (rng.choice(pool),))
        else:
            kind = "and" if roll == 1 else "or"
            a = rng.choice(pool)
            b = rng.choice(pool)
            nodes[gate] = Gate(kind, (a, b))
        pool.append(gate)
    weights = [1] * nblocks
    return make_circuit(nodes, gate, blocks, weights)


def exact_weight_assignments(circuit):
    spaces = [
        list(itertools.combinations(block, weight))
        for block, weight in zip(circuit.blocks, circuit.weights)
    ]
    for parts in itertools.product(*spaces):
        yield set(itertools.chain.from_iterable(parts))


def suite_monotonize(seed: int, count: int) -> SuiteResult:
    """Negation removal is not-free and agrees on all exact-weight assignments."""
    res = SuiteResult("monotonize")
    for i in range(count):
        circuit = random_general_circuit(_rng_for(seed, i))
        flattened = de_morgan(circuit)
        mono = monotonize(flattened)
        if not mono.is_monotone:
            res.fail("circuit %d: output still contains a not-node" % i)
        for chosen in exact_weight_assignments(circuit):
            if circuit_eval(circuit, chosen) != circuit_eval(mono, chosen):
                res.fail("circuit %d: differs on %s" % (i, sorted(chosen)))
                break
        res.checked += 1
    return res


SUITES = {
    "monotone": suite_monotone,
    "stabilize": suite_stabilize,
    "soundness": suite_soundness,
    "completeness": suite_completeness,
    "fresh-name": suite_fresh_name,
    "memo": suite_memo,
    "determinism": suite_determinism,
    "split-early": suite_split_early,
    "ordering": suite_ordering,
    "qbf": suite_qbf,
    "qmcs": suite_qmcs,
    "wmcs": suite_wmcs,
    "wamcs": suite_wamcs,
    "threshold": suite_threshold,
    "monotonize": suite_monotonize,
}
