"""Benchmark instance manifest, instance resolution, and graph generators.

The manifest carries the published metadata for the standard coloring
benchmark set (sizes, best known color counts, the population sizes used for
the reference results, and the color counts reported for comparable solvers).
Instance files themselves are not redistributed; point CQEA_INSTANCE_DIR at a
directory of DIMACS .col files fetched from the public instance library.

The Mycielski and queen-board families are defined by exact constructions, so
those instances can be synthesized locally; resolve_instance falls back to
the generator when no file is found.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .graph import Graph, InstanceMeta, load_dimacs

__all__ = [
    "BenchmarkEntry",
    "BENCHMARKS",
    "GENERATED_NAMES",
    "mycielski_graph",
    "queen_graph",
    "complete_graph",
    "cycle_graph",
    "star_graph",
    "path_graph",
    "random_graph",
    "generate_instance",
    "resolve_instance",
    "instance_dir",
]

INSTANCE_DIR_ENV = "CQEA_INSTANCE_DIR"


@dataclass(frozen=True)
class BenchmarkEntry:
    """One row of the benchmark manifest."""

    name: str
    n: int
    m: int
    best_known: int
    pop_size: int
    # Published color counts for this solver family and the comparison
    # solvers, plus published success rates where reported (static data used
    # only for report rendering).
    published_colors: dict[str, int] = field(default_factory=dict)
    published_success: dict[str, str] = field(default_factory=dict)

    def meta(self) -> InstanceMeta:
        return InstanceMeta(self.name, self.n, self.m, self.best_known)


def _entry(name, n, m, best, pop, colors, success=None):
    cqea, mcoa, dbg, qicsa = colors
    published = {"cqea": cqea, "mcoa": mcoa, "dbg": dbg, "qicsa": qicsa}
    return BenchmarkEntry(name, n, m, best, pop, published, success or {})


BENCHMARKS: dict[str, BenchmarkEntry] = {
    e.name: e
    for e in [
        _entry("myciel3", 11, 20, 4, 10, (4, 4, 4, 4)),
        _entry("myciel4", 23, 71, 5, 10, (5, 5, 5, 5)),
        _entry("queen5_5", 25, 160, 5, 10, (5, 5, 5, 5)),
        _entry("queen6_6", 36, 290, 7, 10, (7, 8, 7, 8),
               {"cqea": "4/15", "dbg": "15/15"}),
        _entry("myciel5", 47, 236, 6, 6, (6, 6, 6, 6)),
        _entry("huck", 74, 301, 11, 6, (11, 11, 11, 11)),
        _entry("jean", 80, 254, 10, 6, (10, 10, 10, 10)),
        _entry("david", 87, 406, 11, 6, (11, 11, 11, 11),
               {"cqea": "15/15", "dbg": "14/15"}),
        _entry("games120", 120, 638, 9, 6, (9, 9, 9, 9),
               {"cqea": "15/15", "dbg": "15/15"}),
        _entry("miles250", 128, 387, 8, 6, (8, 8, 8, 8),
               {"cqea": "15/15", "dbg": "11/15"}),
        _entry("miles500", 128, 1170, 20, 6, (20, 20, 20, 20),
               {"cqea": "10/15", "dbg": "10/15"}),
        _entry("anna", 138, 493, 11, 6, (11, 11, 11, 11),
               {"cqea": "15/15", "dbg": "12/15"}),
        _entry("fpsol2.i.1", 496, 11654, 65, 6, (65, 65, 65, 65),
               {"cqea": "15/15", "dbg": "2/15"}),
    ]
}


def default_pop_size(n: int) -> int:
    """Population size rule used when none is configured: 10 up to 40
    vertices, 6 beyond (mirrors the benchmark protocol)."""
    return 10 if n <= 40 else 6


def mycielski_graph(index: int) -> Graph:
    """Triangle-free graphs of growing chromatic number.

    Iterates the Mycielski construction starting from a single edge;
    ``index`` follows the benchmark file naming, so index 3 is the 11-vertex
    graph with chromatic number 4 and index i has 3 * 2^(i-1) - 1 vertices.
    """
    if index < 2:
        raise ValueError("index must be >= 2")
    n = 2
    edges = [(0, 1)]
    for _ in range(index - 1):
        mirrored = []
        for u, v in edges:
            mirrored.append((u, v + n))
            mirrored.append((v, u + n))
        apex = [(i + n, 2 * n) for i in range(n)]
        edges = edges + mirrored + apex
        n = 2 * n + 1
    return Graph(n, edges)


def queen_graph(size: int) -> Graph:
    """Queens on a size x size board; edges join squares sharing a row,
    column, or diagonal. Vertices are numbered row-major."""
    if size < 1:
        raise ValueError("size must be >= 1")
    edges = []
    cells = [(r, c) for r in range(size) for c in range(size)]
    for i, (r1, c1) in enumerate(cells):
        for j in range(i + 1, len(cells)):
            r2, c2 = cells[j]
            if r1 == r2 or c1 == c2 or abs(r1 - r2) == abs(c1 - c2):
                edges.append((i, j))
    return Graph(size * size, edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """Center vertex 0 joined to ``leaves`` leaf vertices."""
    return Graph(leaves + 1, [(0, i + 1) for i in range(leaves)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi G(n, p); used by the randomized test suites."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph(n, edges)


_GENERATORS = {
    "myciel3": lambda: mycielski_graph(3),
    "myciel4": lambda: mycielski_graph(4),
    "myciel5": lambda: mycielski_graph(5),
    "queen5_5": lambda: queen_graph(5),
    "queen6_6": lambda: queen_graph(6),
}

GENERATED_NAMES = tuple(sorted(_GENERATORS))


def generate_instance(name: str) -> Graph:
    """Synthesize a benchmark instance that has an exact construction."""
    try:
        g = _GENERATORS[name]()
    except KeyError:
        raise KeyError(
            f"no generator for {name!r}; fetch the file and set {INSTANCE_DIR_ENV}"
        ) from None
    entry = BENCHMARKS[name]
    if (g.n, g.m) != (entry.n, entry.m):
        raise AssertionError(
            f"generator for {name} produced {g.n}/{g.m}, manifest says {entry.n}/{entry.m}"
        )
    return g


def instance_dir() -> Path | None:
    value = os.environ.get(INSTANCE_DIR_ENV)
    return Path(value) if value else None


def _meta_for(name: str, g: Graph) -> InstanceMeta:
    entry = BENCHMARKS.get(name)
    best = entry.best_known if entry else None
    return InstanceMeta(name, g.n, g.m, best)


def resolve_instance(spec: str | Path) -> tuple[Graph, InstanceMeta]:
    """Resolve an instance argument to a parsed graph plus metadata.

    Accepts an existing file path, a bare benchmark name found under
    CQEA_INSTANCE_DIR (with or without the .col suffix), or the name of a
    synthesizable instance. Raises FileNotFoundError otherwise.
    """
    path = Path(spec)
    if path.is_file():
        g = load_dimacs(path)
        return g, _meta_for(path.stem, g)
    name = path.name.removesuffix(".col")
    directory = instance_dir()
    if directory is not None:
        for candidate in (directory / f"{name}.col", directory / name):
            if candidate.is_file():
                g = load_dimacs(candidate)
                return g, _meta_for(name, g)
    if name in _GENERATORS:
        g = generate_instance(name)
        return g, _meta_for(name, g)
    raise FileNotFoundError(
        f"instance {spec!r} not found (searched {directory or 'no instance dir'};"
        f" synthesizable names: {', '.join(GENERATED_NAMES)})"
    )
