"""Benchmark figure rendering.

Produces small summary figures next to the benchmark CSV: color counts found
per instance (spread over runs against the best known value) and the mean
inner-iteration cost per instance. File output only; no interactive backend.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import InstanceResult

__all__ = ["render_benchmark_figures"]


def render_benchmark_figures(results: list[InstanceResult], out_dir) -> list[Path]:
    """Write colors and iterations summary PNGs into ``out_dir``.

    Returns the paths written; empty list when there is nothing to plot.
    """
    if not results:
        return []
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = [r.meta.name for r in results]
    written = []

    fig, ax = plt.subplots(figsize=(max(6.0, 0.9 * len(names)), 4.0))
    x = range(len(results))
    mins = [r.stats.min_colors for r in results]
    maxs = [r.stats.max_colors for r in results]
    means = [r.stats.mean_colors for r in results]
    err_low = [m - lo for m, lo in zip(means, mins)]
    err_high = [hi - m for m, hi in zip(means, maxs)]
    ax.errorbar(
        x, means, yerr=[err_low, err_high],
        fmt="o", capsize=4, color="tab:blue", label="found (min/mean/max)",
    )
    best = [r.meta.best_known for r in results]
    if any(b is not None for b in best):
        ax.scatter(
            [i for i, b in enumerate(best) if b is not None],
            [b for b in best if b is not None],
            marker="_", s=300, color="tab:red", label="best known",
        )
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("colors")
    ax.set_title("Colors found per instance")
    ax.legend()
    fig.tight_layout()
    path = out_dir / "bench_colors.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(max(6.0, 0.9 * len(names)), 4.0))
    iters = [max(r.stats.mean_iterations, 0.1) for r in results]
    ax.bar(list(x), iters, color="tab:green")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_ylabel("mean inner iterations")
    ax.set_yscale("log")
    ax.set_title("Search cost per instance")
    fig.tight_layout()
    path = out_dir / "bench_iterations.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written
