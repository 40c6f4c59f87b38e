"""Timing harness emitting one CSV row per solved instance.

Grid specs look like ``sizes=4,8,16;levels=1,2,3;seeds=5`` with optional
``names=``, ``width=`` and ``factor=`` overrides (clause count = factor *
size).  Cells run in grid order: sizes outermost, then levels, then seeds;
the same (size, seed) pair reuses the same instance across levels so the
level columns are comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .generate import GenParams, gen_random_instance
from .solver import decide, split_candidates

CSV_HEADER = "seed,terms,names,clauses,level,answer,time_ns,closures"


class GridError(ValueError):
    """Malformed bench grid specification."""


@dataclass(frozen=True)
class Grid:
    sizes: tuple[int, ...]
    levels: tuple[int, ...]
    seeds: int
    names: int = 3
    width: int = 3
    factor: int = 2


@dataclass(frozen=True)
class BenchRow:
    seed: int
    terms: int
    names: int
    clauses: int
    level: int
    answer: bool
    time_ns: int
    closures: int

    def csv(self) -> str:
        return "%d,%d,%d,%d,%d,%s,%d,%d" % (
            self.seed,
            self.terms,
            self.names,
            self.clauses,
            self.level,
            "YES" if self.answer else "NO",
            self.time_ns,
            self.closures,
        )


def parse_grid(spec: str) -> Grid:
    fields: dict[str, str] = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise GridError("malformed grid field %r" % part)
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    try:
        sizes = tuple(int(v) for v in fields.pop("sizes").split(","))
        levels = tuple(int(v) for v in fields.pop("levels").split(","))
        seeds = int(fields.pop("seeds", "3"))
        names = int(fields.pop("names", "3"))
        width = int(fields.pop("width", "3"))
        factor = int(fields.pop("factor", "2"))
    except (KeyError, ValueError) as exc:
        raise GridError("grid spec needs sizes=...;levels=...[;seeds=N]: %s" % exc)
    if fields:
        raise GridError("unknown grid fields %s" % sorted(fields))
    if not sizes or not levels or seeds < 1:
        raise GridError("grid must contain at least one cell")
    return Grid(sizes, levels, seeds, names, width, factor)


def run_grid(grid: Grid, memo: bool = False) -> list[BenchRow]:
    rows: list[BenchRow] = []
    for size in grid.sizes:
        for level in grid.levels:
            for seed in range(grid.seeds):
                params = GenParams(
                    terms=size,
                    names=grid.names,
                    clauses=grid.factor * size,
                    width=grid.width,
                    level=level,
                )
                instance = gen_random_instance(seed, params)
                ctx = split_candidates(instance)
                start = time.perf_counter_ns()
                verdict = decide(instance, memo=memo)
                elapsed = time.perf_counter_ns() - start
                rows.append(
                    BenchRow(
                        seed=seed,
                        terms=len(ctx.terms),
                        names=len(ctx.names) - 1,  # mentioned names; @fresh excluded
                        clauses=len(instance.kb),
                        level=level,
                        answer=verdict.answer,
                        time_ns=elapsed,
                        closures=verdict.stats.closures,
                    )
                )
    return rows


def rows_to_csv(rows) -> str:
    return "\n".join([CSV_HEADER] + [r.csv() for r in rows]) + "\n"
