"""Seeded, reproducible benchmark campaigns with CSV and JSON reporting.

A campaign runs R independent solves per instance with seeds seed_base + 0
.. seed_base + R - 1. Runs may execute in parallel worker processes; results
are collected and ordered deterministically by (instance, run index), so a
repeated campaign with the same seed base reproduces the CSV byte for byte
apart from the wall-time column.
"""

from __future__ import annotations

import dataclasses
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .coloring import format_solution
from .graph import Graph, InstanceMeta, conflict_count
from .instances import BENCHMARKS, resolve_instance
from .search import CqeaConfig, RunReport, run_cqea

__all__ = [
    "AggregateStats",
    "InstanceResult",
    "CSV_COLUMNS",
    "run_campaign",
    "render_csv",
    "summary_dict",
]

CSV_COLUMNS = (
    "instance,n,m,best_known,pop_size,run,seed,colors,conflicts,"
    "total_inner_iterations,wall_ms"
)
# Columns whose values vary between identical campaigns.
TIMING_COLUMNS = ("wall_ms",)


@dataclass(frozen=True)
class AggregateStats:
    """Per-instance summary over runs, matching the usual benchmark columns."""

    runs: int
    min_colors: int
    max_colors: int
    mean_colors: float
    std_colors: float
    mean_iterations: float
    success_count: int | None

    @staticmethod
    def from_reports(reports: list[RunReport], best_known: int | None) -> "AggregateStats":
        colors = [r.colors_found for r in reports]
        iters = [r.total_inner_iterations for r in reports]
        mean = statistics.fmean(colors)
        # Population standard deviation, the convention used by the published
        # benchmark tables.
        std = (statistics.fmean((c - mean) ** 2 for c in colors)) ** 0.5
        success = None
        if best_known is not None:
            success = sum(
                1 for r in reports if r.conflicts == 0 and r.colors_found <= best_known
            )
        return AggregateStats(
            runs=len(reports),
            min_colors=min(colors),
            max_colors=max(colors),
            mean_colors=mean,
            std_colors=std,
            mean_iterations=statistics.fmean(iters),
            success_count=success,
        )


@dataclass
class InstanceResult:
    meta: InstanceMeta
    graph: Graph
    reports: list[RunReport]
    stats: AggregateStats


def _one_run(graph: Graph, meta: InstanceMeta, cfg: CqeaConfig) -> RunReport:
    return run_cqea(graph, cfg, meta)


def run_campaign(
    specs: list,
    runs: int,
    seed_base: int,
    base_cfg: CqeaConfig,
    jobs: int = 1,
    pop_size_override: int | None = None,
    on_skip=None,
) -> list[InstanceResult]:
    """Execute the campaign.

    ``specs`` are instance arguments as accepted by resolve_instance.
    Unresolvable or unparsable instances are reported through ``on_skip`` and
    skipped rather than aborting the campaign. Population size per instance:
    explicit override first, then the manifest's published size, then the
    size rule.
    """
    resolved: list[tuple[Graph, InstanceMeta, CqeaConfig]] = []
    for spec in specs:
        try:
            graph, meta = resolve_instance(spec)
        except (OSError, ValueError, KeyError) as exc:
            if on_skip is not None:
                on_skip(spec, exc)
            continue
        pop = pop_size_override
        if pop is None and base_cfg.pop_size is not None:
            pop = base_cfg.pop_size
        if pop is None and meta.name in BENCHMARKS:
            pop = BENCHMARKS[meta.name].pop_size
        cfg = dataclasses.replace(base_cfg, pop_size=pop)
        resolved.append((graph, meta, cfg))

    tasks = []
    for idx, (graph, meta, cfg) in enumerate(resolved):
        for run_idx in range(runs):
            run_cfg = dataclasses.replace(cfg, seed=seed_base + run_idx)
            tasks.append((idx, run_idx, graph, meta, run_cfg))

    reports: dict[tuple[int, int], RunReport] = {}
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                pool.submit(_one_run, graph, meta, cfg): (idx, run_idx)
                for idx, run_idx, graph, meta, cfg in tasks
            }
            for future, key in futures.items():
                reports[key] = future.result()
    else:
        for idx, run_idx, graph, meta, cfg in tasks:
            reports[(idx, run_idx)] = _one_run(graph, meta, cfg)

    results = []
    for idx, (graph, meta, cfg) in enumerate(resolved):
        ordered = [reports[(idx, run_idx)] for run_idx in range(runs)]
        stats = AggregateStats.from_reports(ordered, meta.best_known)
        results.append(InstanceResult(meta, graph, ordered, stats))
    return results


def render_csv(results: list[InstanceResult]) -> str:
    """One row per run in campaign order, fixed schema."""
    out = io.StringIO()
    out.write(CSV_COLUMNS + "\n")
    for result in results:
        meta = result.meta
        best = "" if meta.best_known is None else str(meta.best_known)
        for run_idx, report in enumerate(result.reports):
            pop = report.config.pop_size if report.config.pop_size is not None else ""
            out.write(
                f"{meta.name},{meta.n},{meta.m},{best},{pop},{run_idx},"
                f"{report.config.seed},{report.colors_found},{report.conflicts},"
                f"{report.total_inner_iterations},{report.wall_ms:.3f}\n"
            )
    return out.getvalue()


def summary_dict(results: list[InstanceResult]) -> dict:
    """JSON summary: per-instance stats plus every run's verified witness."""
    instances = []
    for result in results:
        meta = result.meta
        stats = result.stats
        runs = []
        for report in result.reports:
            entry = report.to_dict(result.graph)
            entry["witness_proper"] = (
                conflict_count(result.graph, report.witness) == 0
            )
            entry["solution_text"] = format_solution(result.graph, report.witness)
            runs.append(entry)
        published = {}
        if meta.name in BENCHMARKS:
            bench = BENCHMARKS[meta.name]
            published = {
                "colors": bench.published_colors,
                "success_rates": bench.published_success,
            }
        instances.append(
            {
                "instance": {
                    "name": meta.name,
                    "n": meta.n,
                    "m": meta.m,
                    "best_known": meta.best_known,
                },
                "stats": {
                    "runs": stats.runs,
                    "min_colors": stats.min_colors,
                    "max_colors": stats.max_colors,
                    "mean_colors": stats.mean_colors,
                    "std_colors": stats.std_colors,
                    "mean_iterations": stats.mean_iterations,
                    "success_count": stats.success_count,
                },
                "published": published,
                "runs": runs,
            }
        )
    return {"schema": "cqea-bench-1", "instances": instances}


def write_summary_json(results: list[InstanceResult], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary_dict(results), fh, indent=2)
        fh.write("\n")
