"""Command line interface.

Exit codes for ``solve`` and ``oracle``: 0 = YES, 1 = NO, 2 = any error.
``check lemmas`` exits 0 when every suite passes, 1 otherwise.
"""

from __future__ import annotations

import argparse
import sys

from .bench import GridError, parse_grid, rows_to_csv, run_grid
from .fileformat import (
    ParseError,
    parse_circuit,
    parse_problem,
    parse_qdimacs,
    print_problem,
)
from .gadgets import GadgetError
from .generate import GenParams, gen_random_instance
from .lang import LangError, is_objective
from .oracle import OracleError, entails
from .reductions import (
    ReductionError,
    reduce_qbf,
    reduce_qmcs,
    reduce_wamcs_complement,
    reduce_wmcs,
)
from .solver import SolverError, TraceNode, decide
from .suites import SUITES

USER_ERRORS = (
    ParseError,
    LangError,
    SolverError,
    OracleError,
    GadgetError,
    ReductionError,
    GridError,
    OSError,
    ValueError,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def format_trace(node: TraceNode | None) -> list[str]:
    lines: list[str] = []

    def emit(n: TraceNode, depth: int) -> None:
        pad = "  " * depth
        if n.holds:
            lines.append("%ssplit %s" % (pad, n.term))
            for case in n.cases:
                lines.append(
                    "%s  case %s -> %s" % (pad, case.name, "YES" if case.holds else "NO")
                )
                if case.sub is not None:
                    emit(case.sub, depth + 2)
        else:
            for term, case in n.refuted:
                lines.append("%ssplit %s [refuted]" % (pad, term))
                lines.append(
                    "%s  case %s -> %s" % (pad, case.name, "YES" if case.holds else "NO")
                )
                if case.sub is not None:
                    emit(case.sub, depth + 2)

    if node is not None:
        emit(node, 0)
    return lines


def _cmd_solve(args) -> int:
    instance = parse_problem(_read(args.file))
    if args.level is not None:
        if not is_objective(instance.query):
            raise SolverError(
                "--level cannot be combined with a query that carries belief operators"
            )
        instance = instance.with_level(args.level)
    verdict = decide(instance, trace=args.trace, memo=args.memo)
    print("YES" if verdict.answer else "NO")
    if args.trace:
        for line in format_trace(verdict.trace):
            print(line)
    if args.stats:
        stats = verdict.stats
        print(
            "closures=%d cache_hits=%d peak_depth=%d"
            % (stats.closures, stats.cache_hits, stats.peak_depth),
            file=sys.stderr,
        )
    return 0 if verdict.answer else 1


def _cmd_oracle(args) -> int:
    instance = parse_problem(_read(args.file))
    if not is_objective(instance.query):
        raise SolverError("classical entailment is defined for objective queries")
    answer = entails(instance.kb, instance.query)
    print("YES" if answer else "NO")
    return 0 if answer else 1


def _cmd_reduce(args) -> int:
    if args.kind == "qbf":
        instance = reduce_qbf(parse_qdimacs(_read(args.input)))
    else:
        circuit = parse_circuit(_read(args.input))
        if args.mode == "qmcs":
            instance = reduce_qmcs(circuit)
        elif args.mode == "wmcs":
            if len(circuit.blocks) != 1:
                raise ReductionError("wmcs mode takes a single-block netlist")
            instance = reduce_wmcs(circuit, circuit.weights[0])
        else:
            if len(circuit.blocks) != 1:
                raise ReductionError("wamcs mode takes a single-block netlist")
            instance = reduce_wamcs_complement(circuit, circuit.weights[0])
    _write(args.output, print_problem(instance))
    return 0


def _cmd_gen(args) -> int:
    params = GenParams(
        terms=args.terms,
        names=args.names,
        clauses=args.clauses,
        width=args.width,
        level=args.level,
    )
    instance = gen_random_instance(args.seed, params)
    _write(args.output, print_problem(instance))
    return 0


def _cmd_bench(args) -> int:
    rows = run_grid(parse_grid(args.grid), memo=args.memo)
    _write(args.output, rows_to_csv(rows))
    return 0


def _cmd_check(args) -> int:
    if args.what != "lemmas":
        raise ValueError("unknown check target %r" % args.what)
    if args.suite == "all":
        names = list(SUITES)
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        raise ValueError(
            "unknown suite %r (expected one of %s)" % (args.suite, ", ".join(SUITES))
        )
    failed = False
    for name in names:
        result = SUITES[name](args.seed, args.count)
        print(result.summary())
        for note in result.notes:
            print("  note: %s" % note)
        for failure in result.failures[:10]:
            print("  failure: %s" % failure)
        failed = failed or not result.passed
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splitbelief",
        description="Belief-level entailment over CNF knowledge bases, with "
        "a classical brute-force oracle and instance-building reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a problem file at its belief level")
    p.add_argument("file")
    p.add_argument("--level", type=int, default=None, help="override the file's level")
    p.add_argument("--trace", action="store_true", help="print the split tree")
    p.add_argument("--memo", action="store_true", help="enable the result cache")
    p.add_argument("--stats", action="store_true", help="print counters to stderr")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("oracle", help="classical entailment by brute force")
    p.add_argument("file")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("reduce", help="encode a source problem as a problem file")
    rsub = p.add_subparsers(dest="kind", required=True)
    pq = rsub.add_parser("qbf", help="from a QDIMACS file")
    pq.add_argument("input")
    pq.add_argument("-o", "--output", required=True)
    pq.set_defaults(func=_cmd_reduce, kind="qbf")
    pc = rsub.add_parser("circuit", help="from a circuit netlist")
    pc.add_argument("input")
    pc.add_argument("--mode", choices=("qmcs", "wmcs", "wamcs"), required=True)
    pc.add_argument("-o", "--output", required=True)
    pc.set_defaults(func=_cmd_reduce, kind="circuit")

    p = sub.add_parser("gen", help="seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--names", type=int, required=True)
    p.add_argument("--clauses", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run a timing grid and write CSV")
    p.add_argument("--grid", required=True, help="e.g. sizes=4,8,16;levels=1,2;seeds=3")
    p.add_argument("--memo", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("check", help="run the property suites")
    p.add_argument("what", choices=("lemmas",))
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=25)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
