"""Seeded random instances from a fixed, platform-independent PRNG.

The generator is SplitMix64: 64-bit state advanced by the golden-ratio
increment 0x9E3779B97F4A7C15 and finalized with the murmur-style mixer
(30/27/31 shifts, multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
All randomness below derives from it, so equal seeds and parameters give
byte-identical instances on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lang import Literal, Term, canonical_clause, or_all, Lit
from .solver import Instance

_MASK = (1 << 64) - 1


class SplitMix64:
    """Deterministic 64-bit PRNG; integers are drawn by modulo reduction."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs a positive bound")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.randrange(hi - lo + 1)

    def boolean(self) -> bool:
        return bool(self.next_u64() & 1)

    def choice(self, seq):
        return seq[self.randrange(len(seq))]


@dataclass(frozen=True)
class GenParams:
    terms: int
    names: int
    clauses: int
    width: int
    level: int

    def __post_init__(self):
        if min(self.terms, self.names, self.width) < 1:
            raise ValueError("terms, names and width must be at least 1")
        if self.clauses < 0 or self.level < 0:
            raise ValueError("clauses and level must be naturals")


def gen_random_instance(seed: int, params: GenParams) -> Instance:
    """A deterministic function of (seed, params).

    Term pool f1..fF, name pool n1..nN.  Per clause: a width in 1..W, then per
    literal a term index, a sign bit, and a name index, in that order; the
    query clause is drawn the same way after the knowledge base.
    """
    rng = SplitMix64(seed)
    terms = [Term("f%d" % (i + 1)) for i in range(params.terms)]
    names = ["n%d" % (i + 1) for i in range(params.names)]

    def draw_literals(width: int):
        out = []
        for _ in range(width):
            term = terms[rng.randrange(params.terms)]
            positive = rng.boolean()
            name = names[rng.randrange(params.names)]
            out.append(Literal(term, positive, name))
        return out

    kb = []
    for _ in range(params.clauses):
        width = rng.randint(1, params.width)
        kb.append(canonical_clause(draw_literals(width)))
    query_width = rng.randint(1, params.width)
    query = or_all([Lit(l) for l in draw_literals(query_width)])
    return Instance(tuple(kb), query, params.level)
