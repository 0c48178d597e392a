"""Command-line front end: solve one instance, replay benchmark campaigns,
or verify a solution file against its instance.

Exit codes: 0 success (and PROPER verdicts), 1 IMPROPER verdict, 2 usage or
configuration error, 3 I/O error, 4 DIMACS parse error, 5 malformed solution
file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bench import render_csv, run_campaign, summary_dict
from .coloring import SolutionFormatError, format_solution, parse_solution
from .graph import DimacsParseError, conflict_count, load_dimacs, max_degree
from .instances import INSTANCE_DIR_ENV, resolve_instance
from .quantum import LevyParams
from .search import CqeaConfig, run_cqea

EXIT_OK = 0
EXIT_IMPROPER = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_SOLUTION = 5


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("search configuration")
    group.add_argument("--pop-size", type=int, default=None,
                       help="population size (default: 10 for n<=40 else 6, "
                            "or the manifest value for known benchmarks)")
    group.add_argument("--max-inner", type=int, default=500,
                       help="inner-loop generation cap per color level")
    group.add_argument("--max-outer", type=int, default=None,
                       help="outer-loop cap (default: max degree + 1)")
    group.add_argument("--limit", type=int, default=5,
                       help="local-search repetition count")
    group.add_argument("--levy-exponent", type=float, default=1.5)
    group.add_argument("--levy-scale", type=float, default=0.1,
                       help="Levy flight step scale")
    group.add_argument("--walk-scale", type=float, default=0.1)
    group.add_argument("--walk-fraction", type=float, default=0.25)
    group.add_argument("--archive-capacity", type=int, default=1)
    group.add_argument("--target-k", type=int, default=None,
                       help="stop once this color count is reached")
    group.add_argument("--keep-better", action="store_true",
                       help="ablation: keep the incumbent nest when the "
                            "random-walk offspring is worse")
    group.add_argument("--time-limit-s", type=float, default=None,
                       help="wall-clock cap per run; a timed-out level "
                            "counts as a failure at that level")


def _config_from(args: argparse.Namespace, seed: int) -> CqeaConfig:
    levy = LevyParams(
        exponent=args.levy_exponent,
        step_scale=args.levy_scale,
        walk_scale=args.walk_scale,
        walk_fraction=args.walk_fraction,
    )
    return CqeaConfig(
        pop_size=args.pop_size,
        max_inner=args.max_inner,
        max_outer=args.max_outer,
        limit=args.limit,
        levy=levy,
        archive_capacity=args.archive_capacity,
        target_k=args.target_k,
        seed=seed,
        keep_better=args.keep_better,
        time_limit_s=args.time_limit_s,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cqea",
        description="Cuckoo quantum evolutionary graph coloring solver. "
                    f"Instance names resolve against ${INSTANCE_DIR_ENV} or "
                    "built-in generators (myciel*/queen*).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a single instance")
    p_solve.add_argument("instance", help="DIMACS .col file or benchmark name")
    p_solve.add_argument("--seed", type=int, default=1)
    p_solve.add_argument("--out", type=Path, default=None,
                         help="write the JSON run report here")
    p_solve.add_argument("--solution", type=Path, default=None,
                         help="write the witness in solution text format")
    _add_config_flags(p_solve)

    p_bench = sub.add_parser("bench", help="run a seeded benchmark campaign")
    p_bench.add_argument("instances", nargs="+",
                         help="instance files, directories of .col files, "
                              "or benchmark names")
    p_bench.add_argument("--runs", type=int, default=10)
    p_bench.add_argument("--seed-base", type=int, default=1,
                         help="run r uses seed seed-base + r")
    p_bench.add_argument("--jobs", type=int, default=1,
                         help="concurrent worker processes")
    p_bench.add_argument("--csv", type=Path, default=None,
                         help="write per-run rows here")
    p_bench.add_argument("--out", type=Path, default=None,
                         help="write the JSON summary here")
    p_bench.add_argument("--no-figures", action="store_true",
                         help="skip the summary figures rendered next to the CSV")
    _add_config_flags(p_bench)

    p_verify = sub.add_parser("verify", help="check a solution file")
    p_verify.add_argument("instance", help="DIMACS .col file or benchmark name")
    p_verify.add_argument("solution", type=Path, help="solution text file")
    return parser


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        graph, meta = resolve_instance(args.instance)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DimacsParseError as exc:
        print(f"error: {args.instance}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        cfg = _config_from(args, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report = run_cqea(graph, cfg, meta)
    best = f" (best known {meta.best_known})" if meta.best_known else ""
    print(f"instance   {meta.name}: n={meta.n} m={meta.m}{best}")
    print(f"start k    {max_degree(graph) + 1}")
    print(f"colors     {report.colors_found}")
    print(f"conflicts  {report.conflicts}")
    levels = ", ".join(f"k={k}:{it}" for k, it in report.per_k_iterations)
    print(f"levels     {levels}")
    print(f"wall       {report.wall_ms:.1f} ms")
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(graph), fh, indent=2)
            fh.write("\n")
        print(f"report     {args.out}")
    if args.solution is not None:
        args.solution.write_text(format_solution(graph, report.witness))
        print(f"solution   {args.solution}")
    return EXIT_OK


def _expand_instances(specs: list[str]) -> list[str]:
    expanded: list[str] = []
    for spec in specs:
        path = Path(spec)
        if path.is_dir():
            expanded.extend(str(p) for p in sorted(path.glob("*.col")))
        else:
            expanded.append(spec)
    return expanded


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        base_cfg = _config_from(args, seed=0)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.runs < 1:
        print("error: --runs must be >= 1", file=sys.stderr)
        return EXIT_USAGE

    skipped = []

    def on_skip(spec, exc):
        skipped.append((spec, exc))
        print(f"skipping {spec}: {exc}", file=sys.stderr)

    specs = _expand_instances(args.instances)
    results = run_campaign(
        specs,
        runs=args.runs,
        seed_base=args.seed_base,
        base_cfg=base_cfg,
        jobs=args.jobs,
        on_skip=on_skip,
    )
    if not results:
        print("error: no instances could be resolved", file=sys.stderr)
        return EXIT_IO

    header = (
        f"{'instance':<14}{'runs':>5}{'min':>5}{'max':>5}"
        f"{'mean':>8}{'std':>8}{'iters':>10}{'success':>9}"
    )
    print(header)
    for result in results:
        stats = result.stats
        success = "-" if stats.success_count is None else f"{stats.success_count}/{stats.runs}"
        print(
            f"{result.meta.name:<14}{stats.runs:>5}{stats.min_colors:>5}"
            f"{stats.max_colors:>5}{stats.mean_colors:>8.2f}{stats.std_colors:>8.3f}"
            f"{stats.mean_iterations:>10.1f}{success:>9}"
        )

    if args.csv is not None:
        args.csv.parent.mkdir(parents=True, exist_ok=True)
        args.csv.write_text(render_csv(results))
        print(f"csv     {args.csv}")
        if not args.no_figures:
            from .figures import render_benchmark_figures

            for path in render_benchmark_figures(results, args.csv.parent):
                print(f"figure  {path}")
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(summary_dict(results), fh, indent=2)
            fh.write("\n")
        print(f"summary {args.out}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        graph, meta = resolve_instance(args.instance)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DimacsParseError as exc:
        print(f"error: {args.instance}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        text = Path(args.solution).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        assignment, declared = parse_solution(text)
    except SolutionFormatError as exc:
        print(f"error: {args.solution}: {exc}", file=sys.stderr)
        return EXIT_SOLUTION
    if assignment.n != graph.n:
        print(
            f"error: solution covers {assignment.n} vertices, instance has {graph.n}",
            file=sys.stderr,
        )
        return EXIT_SOLUTION

    conflicts = conflict_count(graph, assignment)
    if conflicts == 0:
        print(f"PROPER k={assignment.k} ({meta.name})")
        return EXIT_OK
    print(f"IMPROPER k={assignment.k} conflicts={conflicts} ({meta.name})")
    colors = assignment.colors
    shown = 0
    for u, v in zip(graph.edge_u.tolist(), graph.edge_v.tolist()):
        if colors[u] == colors[v]:
            print(f"  conflict edge ({u + 1},{v + 1}) color {int(colors[u]) + 1}")
            shown += 1
            if shown >= 20:
                print("  ... (list capped at 20)")
                break
    return EXIT_IMPROPER


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "solve":
        return _cmd_solve(args)
    if args.command == "bench":
        return _cmd_bench(args)
    if args.command == "verify":
        return _cmd_verify(args)
    parser.error(f"unknown command {args.command!r}")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
