"""Gadget constructions: forced split order, threshold circuits, negation removal.

The split gadgets append clauses over fresh ``@o``/``@w`` terms (all valued at
the designated name ``@t``) that make a goal provable only when the blocks'
terms are split in a prescribed order.  Generated symbols carry the reserved
``@`` prefix, so they can never collide with user symbols.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field

from .lang import (
    Clause,
    Formula,
    GADGET_NAME,
    LangError,
    Lit,
    Literal,
    Term,
    canonical_clause,
    conj,
    formula_names,
    formula_terms,
    negate,
    or_all,
)
from .oracle import Circuit, Gate, OracleError, entails, make_circuit

SKIP_NAME = "W"

_ORDER_RE = re.compile(r"@o([0-9]+)\Z")
_WASTE_RE = re.compile(r"@w([0-9]+)\Z")


class GadgetError(ValueError):
    """Ill-formed gadget or reduction input."""


@dataclass(frozen=True)
class Block:
    """A split block: terms to be split and one committing literal per term.

    Each term of ``terms`` occurs in exactly one literal of ``literals`` and
    no other terms appear.  ``values`` documents the intended value set of
    the construction and carries no semantics.
    """

    terms: frozenset
    literals: tuple
    values: tuple = ()

    def __post_init__(self):
        terms = frozenset(self.terms)
        lits = tuple(sorted(set(self.literals), key=Literal.sort_key))
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "literals", lits)
        object.__setattr__(self, "values", tuple(self.values))
        if not terms:
            raise GadgetError("a block needs at least one term")
        occurrences = [l.term for l in lits]
        if sorted(occurrences, key=Term.sort_key) != sorted(terms, key=Term.sort_key):
            raise GadgetError("every block term must occur in exactly one literal")


@dataclass(frozen=True)
class StageSymbols:
    block_index: int
    waste: tuple
    order: tuple


@dataclass(frozen=True)
class GadgetRegistry:
    stages: tuple = ()
    designated_name: str = GADGET_NAME
    skip_name: str = SKIP_NAME

    def generated_terms(self) -> set:
        out = set()
        for stage in self.stages:
            out.update(stage.waste)
            out.update(stage.order)
        return out


@dataclass(frozen=True)
class GadgetOut:
    clauses: tuple
    query: Formula
    level: int
    registry: GadgetRegistry


class _GadgetSymbols:
    """Allocates fresh @o/@w terms, skipping indices already in use."""

    def __init__(self, used_terms):
        self._order = 1
        self._waste = 1
        for t in used_terms:
            m = _ORDER_RE.match(t.symbol)
            if m:
                self._order = max(self._order, int(m.group(1)) + 1)
            m = _WASTE_RE.match(t.symbol)
            if m:
                self._waste = max(self._waste, int(m.group(1)) + 1)

    def order_term(self) -> Term:
        t = Term("@o%d" % self._order)
        self._order += 1
        return t

    def waste_term(self) -> Term:
        t = Term("@w%d" % self._waste)
        self._waste += 1
        return t


def _used_terms(clauses, alpha: Formula, blocks) -> set:
    used = set(formula_terms(alpha))
    for c in clauses:
        used.update(c.terms())
    for b in blocks:
        used.update(b.terms)
    return used


def build_split_early(
    clauses, block: Block, k: int, alpha: Formula, _symbols=None, _stage=1
) -> GadgetOut:
    """Force one of the block's terms to be split within k case splits.

    Appends, for every committing literal l of the block, the clauses
    ``~l | o1 | .. | ok``, ``l | w1 | .. | w(k-1) | o1 | .. | ok`` and
    ``l | ~wi | o1 | .. | ok`` for each waste literal, over fresh order/waste
    terms valued at ``@t``.  The new goal is
    ``(o1 | .. | ok) & (~l1 | .. | ~lm | alpha)`` at level k: it is provable
    exactly when some block term is split first and the reduced goal then
    holds for every candidate value.
    """
    if k < 1:
        raise GadgetError("the forced-split construction needs k >= 1")
    clauses = tuple(clauses)
    symbols = _symbols or _GadgetSymbols(_used_terms(clauses, alpha, [block]))
    waste = [Literal(symbols.waste_term(), True, GADGET_NAME) for _ in range(k - 1)]
    order = [Literal(symbols.order_term(), True, GADGET_NAME) for _ in range(k)]
    added = []
    for lit in block.literals:
        added.append(canonical_clause([negate(lit), *order]))
        added.append(canonical_clause([lit, *waste, *order]))
        for w in waste:
            added.append(canonical_clause([lit, negate(w), *order]))
    query = conj(
        or_all([Lit(o) for o in order]),
        or_all([Lit(negate(l)) for l in block.literals] + [alpha]),
    )
    registry = GadgetRegistry(
        stages=(
            StageSymbols(
                _stage,
                tuple(w.term for w in waste),
                tuple(o.term for o in order),
            ),
        )
    )
    return GadgetOut(clauses + tuple(added), query, k, registry)


def build_ordering(clauses, blocks, alpha: Formula, k: int) -> GadgetOut:
    """Chain the forced-split construction so the blocks split in order.

    ``blocks`` is given split-last first: stage i wraps block i at level i, so
    the last block in the list is split first at evaluation time and block 1
    last.  Only the first k blocks are wrapped.  Generated terms per stage i
    are its i order terms and i-1 waste terms, k*k fresh terms in total.
    """
    blocks = list(blocks)
    if k > len(blocks):
        raise GadgetError("need at least k blocks to order k splits")
    seen: set = set()
    for b in blocks:
        if seen & b.terms:
            raise GadgetError("block term sets must be mutually disjoint")
        seen |= b.terms
    out_clauses = tuple(clauses)
    if k == 0:
        return GadgetOut(out_clauses, alpha, 0, GadgetRegistry())
    symbols = _GadgetSymbols(_used_terms(out_clauses, alpha, blocks))
    query = alpha
    stages = []
    for i in range(1, k + 1):
        step = build_split_early(
            out_clauses, blocks[i - 1], i, query, _symbols=symbols, _stage=i
        )
        out_clauses = step.clauses
        query = step.query
        stages.extend(step.registry.stages)
    return GadgetOut(out_clauses, query, k, GadgetRegistry(stages=tuple(stages)))


def verify_gadget_preconditions(clauses, blocks) -> bool:
    """Oracle-scale check of the ordering construction's hypothesis.

    For every stage k, every split prefix over the later blocks, and every
    term outside the blocks (those occurring in the base clauses plus one
    representative fresh term), some candidate value must leave both the
    block's committing disjunction and its negation classically non-entailed.
    Returns False on any violation.
    """
    clauses = list(clauses)
    blocks = list(blocks)
    all_block_terms: set = set()
    names: set = {GADGET_NAME}
    for b in blocks:
        all_block_terms |= b.terms
        for l in b.literals:
            names.add(l.name)
            names.update(l.term.args)
    base_terms: set = set()
    for c in clauses:
        base_terms.update(c.terms())
        names.update(c.names())

    probe = Term("@probe")
    while probe in base_terms or probe in all_block_terms:
        probe = Term(probe.symbol + "0")
    outside = sorted(base_terms - all_block_terms, key=Term.sort_key) + [probe]
    name_pool = sorted(names) + ["@probe_value"]

    for stage in range(1, len(blocks) + 1):
        block = blocks[stage - 1]
        pos = or_all([Lit(l) for l in block.literals])
        neg = or_all([Lit(negate(l)) for l in block.literals])
        later = blocks[stage:]
        pick_spaces = [
            [(t, n) for t in sorted(b.terms, key=Term.sort_key) for n in name_pool]
            for b in later
        ]
        for picks in itertools.product(*pick_spaces):
            prefix = [
                canonical_clause([Literal(t, True, n)]) for t, n in picks
            ]
            for t in outside:
                if not any(
                    not entails(clauses + prefix + [canonical_clause([Literal(t, True, n)])], pos)
                    and not entails(clauses + prefix + [canonical_clause([Literal(t, True, n)])], neg)
                    for n in name_pool
                ):
                    return False
    return True


# Circuit-side constructions ---------------------------------------------------


def _threshold_nodes(inputs, threshold: int, prefix: str, nodes: dict) -> str:
    """Build at-least-``threshold``-of-``inputs`` gates into ``nodes``.

    Interval or-nodes assert that at least t of a contiguous input range are
    true; their children split the range and conjoin the two sides with
    pairing and-nodes.  Returns the root node id (an existing input for the
    one-input wire case).
    """
    m = len(inputs)
    if not 1 <= threshold <= m:
        raise GadgetError("threshold out of range: %d of %d" % (threshold, m))
    memo: dict = {}

    def build(i1: int, i2: int, t: int) -> str:
        key = (i1, i2, t)
        got = memo.get(key)
        if got is not None:
            return got
        if i1 == i2:
            node = inputs[i1 - 1]
        else:
            children = []
            seen = set()
            for split in range(i1, i2):
                left_size = split - i1 + 1
                right_size = i2 - split
                for tl in range(max(0, t - right_size), min(t, left_size) + 1):
                    tr = t - tl
                    if tl == 0:
                        child = build(split + 1, i2, t)
                    elif tr == 0:
                        child = build(i1, split, tl)
                    else:
                        left = build(i1, split, tl)
                        right = build(split + 1, i2, tr)
                        child = "%sa_%d_%d_%d_%d_%d" % (prefix, i1, i2, t, split, tl)
                        nodes[child] = Gate("and", (left, right))
                    if child not in seen:
                        seen.add(child)
                        children.append(child)
            node = "%sv_%d_%d_%d" % (prefix, i1, i2, t)
            nodes[node] = Gate("or", tuple(children))
        memo[key] = node
        return node

    return build(1, m, threshold)


def threshold_subcircuit(m: int, t: int) -> Circuit:
    """A monotone circuit over m inputs that is true iff at least t are true."""
    if not 1 <= t <= m:
        raise GadgetError("threshold out of range: %d of %d" % (t, m))
    inputs = ["x%d" % (i + 1) for i in range(m)]
    nodes = {x: Gate("input") for x in inputs}
    root = _threshold_nodes(inputs, t, "", nodes)
    return make_circuit(nodes, root, [tuple(inputs)], [t])


def _check_helper_ids(circuit: Circuit, prefixes) -> None:
    # Generated node ids use these prefixes; reject inputs that squat on them.
    for n, _ in circuit.nodes:
        if n.startswith(prefixes):
            raise GadgetError("node ids may not start with %s" % (prefixes,))


def de_morgan(circuit: Circuit) -> Circuit:
    """Push negations down so every not-node sits directly above an input.

    Dual-rail rewrite: each gate gets a value node and a complement node,
    with and/or dualized; only input complements remain as not-nodes.
    """
    _check_helper_ids(circuit, ("dmp_", "dmn_", "th_"))
    nodes: dict = {x: Gate("input") for x in circuit.inputs}
    source = circuit.node_map
    pos_memo: dict = {}
    neg_memo: dict = {}

    def pos(n: str) -> str:
        got = pos_memo.get(n)
        if got is not None:
            return got
        g = source[n]
        if g.kind == "input":
            out = n
        elif g.kind == "not":
            out = neg(g.args[0])
        else:
            out = "dmp_%s" % n
            nodes[out] = Gate(g.kind, tuple(pos(a) for a in g.args))
        pos_memo[n] = out
        return out

    def neg(n: str) -> str:
        got = neg_memo.get(n)
        if got is not None:
            return got
        g = source[n]
        if g.kind == "input":
            out = "dmn_%s" % n
            nodes[out] = Gate("not", (n,))
        elif g.kind == "not":
            out = pos(g.args[0])
        else:
            dual = "or" if g.kind == "and" else "and"
            out = "dmn_%s" % n
            nodes[out] = Gate(dual, tuple(neg(a) for a in g.args))
        neg_memo[n] = out
        return out

    root = pos(circuit.output)
    root = _buffer_if_consumed(nodes, root)
    return make_circuit(nodes, root, circuit.blocks, circuit.weights)


def _buffer_if_consumed(nodes: dict, root: str) -> str:
    if any(root in g.args for g in nodes.values()):
        buf = "th_out"
        while buf in nodes:
            buf += "_"
        nodes[buf] = Gate("or", (root,))
        return buf
    return root


def monotonize(circuit: Circuit) -> Circuit:
    """Replace input-level not-nodes by thresholds over the rest of the block.

    Under assignments that set exactly the block weight of inputs true, the
    complement of x is true iff at least that many inputs among the block
    minus x are true, so each not-node over x becomes a threshold subcircuit
    over its block without x.  Requires every not-node to sit directly above
    an input (apply :func:`de_morgan` first) and the block weight to fit.
    """
    _check_helper_ids(circuit, ("th_",))
    nodes = dict(circuit.node_map)
    replacement: dict = {}
    for n, g in circuit.nodes:
        if g.kind != "not":
            continue
        x = g.args[0]
        if circuit.node_map[x].kind != "input":
            raise GadgetError("not-node %s is not directly above an input" % n)
        bi = circuit.block_of(x)
        rest = [y for y in circuit.blocks[bi] if y != x]
        weight = circuit.weights[bi]
        if weight > len(rest):
            raise GadgetError(
                "cannot express the complement of %s: block weight %d exceeds "
                "the %d remaining inputs" % (x, weight, len(rest))
            )
        replacement[n] = _threshold_nodes(rest, weight, "th_%s_" % n, nodes)
        del nodes[n]

    def resolve(a: str) -> str:
        return replacement.get(a, a)

    rebuilt = {
        n: Gate(g.kind, tuple(resolve(a) for a in g.args)) for n, g in nodes.items()
    }
    root = resolve(circuit.output)
    root = _buffer_if_consumed(rebuilt, root)
    return make_circuit(rebuilt, root, circuit.blocks, circuit.weights)
