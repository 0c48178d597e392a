"""The cuckoo quantum evolutionary search engine.

Two nested loops drive the solver. The inner loop (:func:`run_inner`) works
at a fixed color count k and tries to drive the number of conflicting edges
to zero: each iteration re-decodes the population from its quantum genotypes
(measure + repair), improves the decoded solutions by local search, feeds an
elite archive, applies the cuckoo operators (Levy flight, then random walk
when the flight does not improve), and finally applies a conflict-driven
perturbation. The outer loop (:func:`run_cqea`) starts at k = max degree + 1,
which always admits a proper coloring, and walks k downward after every
success, seeding each new level from the previous winner: unused color rows
are deleted outright (which can skip several k values at once) and otherwise
the least-used color row is sacrificed, leaving its vertices to be repaired.

All randomness flows through one numpy Generator per run; identical inputs
and seed produce identical results apart from wall time.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .coloring import ColorAssignment, repair_colors
from .graph import Graph, InstanceMeta, conflict_count, conflict_vertices, max_degree
from .instances import default_pop_size
from .quantum import (
    LevyParams,
    QuantumMatrix,
    inherit,
    levy_flight,
    measure,
    random_walk,
    reset_columns,
    uniform_init,
)

__all__ = [
    "Nest",
    "ArchiveEntry",
    "Archive",
    "CqeaConfig",
    "KLevelOutcome",
    "RunReport",
    "local_search",
    "cuckoo_step",
    "perturbation",
    "run_inner",
    "run_cqea",
]

SearchMode = Literal["archive", "population"]


def _conflicts(g: Graph, colors: np.ndarray) -> int:
    if g.m == 0:
        return 0
    return int(np.count_nonzero(colors[g.edge_u] == colors[g.edge_v]))


def _shuffled(items: list, rng: np.random.Generator) -> list:
    out = list(items)
    if len(out) > 1:
        rng.shuffle(out)
    return out


@dataclass
class Nest:
    """One population member: genotype, decoded coloring, and its fitness."""

    q: QuantumMatrix
    colors: np.ndarray
    fitness: int

    def assignment(self) -> ColorAssignment:
        return ColorAssignment(self.colors, self.q.k)


@dataclass
class ArchiveEntry:
    colors: np.ndarray
    fitness: int
    # Genotype snapshot from the moment the coloring was decoded; later local
    # improvements to the coloring leave it untouched.
    q: QuantumMatrix


class Archive:
    """Bounded elite store of the best colorings found at the current k."""

    def __init__(self, k: int, capacity: int = 1):
        if capacity < 1:
            raise ValueError("archive capacity must be >= 1")
        self.k = k
        self.capacity = capacity
        self.entries: list[ArchiveEntry] = []

    @property
    def best(self) -> ArchiveEntry:
        return self.entries[0]

    @property
    def best_fitness(self) -> int:
        return self.entries[0].fitness

    def absorb(self, colors: np.ndarray, fitness: int, q: QuantumMatrix) -> bool:
        """Admit a candidate if the archive has room or it beats the worst
        entry. The candidate's coloring is copied; the genotype is shared
        (genotypes are immutable)."""
        if len(self.entries) < self.capacity:
            self.entries.append(ArchiveEntry(colors.copy(), fitness, q))
        elif fitness < self.entries[-1].fitness:
            self.entries[-1] = ArchiveEntry(colors.copy(), fitness, q)
        else:
            return False
        self.entries.sort(key=lambda e: e.fitness)
        return True

    def resort(self):
        self.entries.sort(key=lambda e: e.fitness)

    def best_assignment(self) -> ColorAssignment:
        return ColorAssignment(self.best.colors, self.k)


@dataclass(frozen=True)
class CqeaConfig:
    """Run configuration; every stochastic default is overridable.

    pop_size None defers to the size rule (10 up to 40 vertices, else 6).
    max_outer None defers to max_degree + 1, enough to walk k down one step
    per generation from the starting bound.
    """

    pop_size: int | None = None
    max_inner: int = 500
    max_outer: int | None = None
    limit: int = 5
    levy: LevyParams = LevyParams()
    archive_capacity: int = 1
    target_k: int | None = None
    seed: int = 0
    keep_better: bool = False
    time_limit_s: float | None = None

    def __post_init__(self):
        if self.pop_size is not None and self.pop_size < 1:
            raise ValueError("pop_size must be >= 1")
        if self.max_inner < 1 or self.limit < 1:
            raise ValueError("max_inner and limit must be >= 1")
        if self.max_outer is not None and self.max_outer < 1:
            raise ValueError("max_outer must be >= 1")
        if self.archive_capacity < 1:
            raise ValueError("archive_capacity must be >= 1")
        if self.target_k is not None and self.target_k < 1:
            raise ValueError("target_k must be >= 1")


@dataclass(frozen=True)
class KLevelOutcome:
    """Result of one fixed-k search level; success means the best coloring
    has zero conflicting edges (re-verified by the caller)."""

    k: int
    success: bool
    best: ColorAssignment
    inner_iterations_used: int
    best_q: QuantumMatrix


@dataclass(frozen=True)
class RunReport:
    """Per-run record: what was found, at what cost, under which settings."""

    instance: InstanceMeta
    config: CqeaConfig
    colors_found: int
    conflicts: int
    per_k_iterations: tuple[tuple[int, int], ...]
    wall_ms: float
    witness: ColorAssignment

    @property
    def total_inner_iterations(self) -> int:
        return sum(it for _, it in self.per_k_iterations)

    def to_dict(self, g: Graph) -> dict:
        """JSON-ready dict; conflicts are recomputed against the graph here,
        never copied from solver state."""
        conflicts = conflict_count(g, self.witness)
        return {
            "instance": {
                "name": self.instance.name,
                "n": self.instance.n,
                "m": self.instance.m,
                "best_known": self.instance.best_known,
            },
            "config": {
                "pop_size": self.config.pop_size,
                "max_inner": self.config.max_inner,
                "max_outer": self.config.max_outer,
                "limit": self.config.limit,
                "levy_exponent": self.config.levy.exponent,
                "levy_scale": self.config.levy.step_scale,
                "walk_scale": self.config.levy.walk_scale,
                "walk_fraction": self.config.levy.walk_fraction,
                "archive_capacity": self.config.archive_capacity,
                "target_k": self.config.target_k,
                "seed": self.config.seed,
                "keep_better": self.config.keep_better,
                "time_limit_s": self.config.time_limit_s,
            },
            "colors_found": self.colors_found,
            "conflicts": conflicts,
            "per_k_iterations": [list(pair) for pair in self.per_k_iterations],
            "wall_ms": self.wall_ms,
            "witness": {
                "k": self.witness.k,
                "colors": [int(c) + 1 for c in self.witness.colors],
            },
        }


def _sweep(
    g: Graph,
    colors: np.ndarray,
    k: int,
    fitness: int,
    archive_mode: bool,
    rng: np.random.Generator,
    order: np.ndarray | None = None,
) -> int:
    """One local-search pass, mutating ``colors`` in place.

    Visits vertices in a random order (or the injected one) and recolors each
    vertex whose alternative-color set is nonempty: archive mode takes the
    smallest such color, population mode a uniform random one. Every move is
    conflict-free by construction, so the returned fitness never exceeds the
    input fitness.
    """
    adjacency = g.adjacency_lists
    if order is None:
        order = rng.permutation(g.n).tolist()
    else:
        order = [int(v) for v in order]
    current = colors.tolist()
    # One pre-drawn uniform per vertex covers population mode's random picks.
    draws = None if archive_mode else rng.random(len(order))
    for pos, v in enumerate(order):
        nb = adjacency[v]
        own = current[v]
        counts = [0] * k
        for u in nb:
            counts[current[u]] += 1
        if archive_mode:
            chosen = -1
            for c in range(k):
                if c != own and counts[c] == 0:
                    chosen = c
                    break
            if chosen < 0:
                continue
        else:
            free = [c for c in range(k) if c != own and counts[c] == 0]
            if not free:
                continue
            chosen = free[int(draws[pos] * len(free))]
        fitness -= counts[own]
        current[v] = chosen
    colors[:] = current
    return fitness


def _local_search_arrays(
    g: Graph,
    colors: np.ndarray,
    k: int,
    fitness: int,
    archive_mode: bool,
    rng: np.random.Generator,
    limit: int,
) -> tuple[np.ndarray, int]:
    """Up to ``limit`` sweeps, chaining from the incumbent; a sweep's result
    replaces the incumbent only when strictly better."""
    for _ in range(limit):
        if fitness == 0:
            break
        candidate = colors.copy()
        f_candidate = _sweep(g, candidate, k, fitness, archive_mode, rng)
        assert f_candidate == _conflicts(g, candidate)
        if f_candidate < fitness:
            colors, fitness = candidate, f_candidate
    return colors, fitness


def local_search(
    g: Graph,
    a: ColorAssignment,
    mode: SearchMode,
    rng: np.random.Generator,
    limit: int = 5,
) -> ColorAssignment:
    """Randomized recoloring descent over alternative-color sets.

    Archive mode prefers the smallest alternative color (pulling solutions
    toward a compact color range); population mode picks randomly to keep the
    population diverse. Never returns a worse coloring than its input.
    """
    if mode not in ("archive", "population"):
        raise ValueError(f"unknown mode {mode!r}")
    colors = np.asarray(a.colors, dtype=np.intp).copy()
    fitness = conflict_count(g, colors)
    colors, _ = _local_search_arrays(
        g, colors, a.k, fitness, mode == "archive", rng, limit
    )
    return ColorAssignment(colors, a.k)


def cuckoo_step(
    g: Graph,
    nests: list[Nest],
    archive: Archive,
    levy: LevyParams,
    rng: np.random.Generator,
    keep_better: bool = False,
) -> None:
    """One cuckoo-search generation over all nests.

    Per nest: fly (Levy), decode, and compare against the nest's current
    fitness. An improving offspring replaces the nest; otherwise the
    offspring is random-walked, re-decoded, and installed unconditionally
    (the archive alone carries elitism). With ``keep_better`` the walked
    offspring is installed only if it improves, a conservative variant kept
    for ablation runs. The archive absorbs every final offspring that beats
    its worst entry.
    """
    for nest in nests:
        q_new = levy_flight(nest.q, levy, rng)
        colors_new = repair_colors(measure(q_new, rng), rng)
        f_new = _conflicts(g, colors_new)
        if f_new < nest.fitness:
            nest.q, nest.colors, nest.fitness = q_new, colors_new, f_new
        else:
            q_new = random_walk(q_new, levy, rng)
            colors_new = repair_colors(measure(q_new, rng), rng)
            f_new = _conflicts(g, colors_new)
            if not keep_better or f_new < nest.fitness:
                nest.q, nest.colors, nest.fitness = q_new, colors_new, f_new
        archive.absorb(colors_new, f_new, q_new)


def perturbation(
    g: Graph,
    nests: list[Nest],
    archive: Archive,
    rng: np.random.Generator,
) -> None:
    """Conflict-driven shake-up of the population and the archive.

    No-op when the archive best is already proper. Otherwise the conflicting
    vertices C of the best coloring are located; the worse half of the
    population (by fitness) has its genotype columns over C reset to equal
    superposition; and each archive entry gets a targeted rewrite around each
    v in C: the most frequent color among v's neighbors is spread to every
    neighbor that can take it without creating a new conflict (vacating
    colors around v), after which v moves to a random alternative color if it
    is still conflicting and one exists. None of these rewrites can worsen an
    entry.
    """
    cols = conflict_vertices(g, archive.best.colors)
    if cols.size == 0:
        return
    nests.sort(key=lambda nest: nest.fitness)
    half = math.ceil(len(nests) / 2)
    for nest in nests[half:]:
        nest.q = reset_columns(nest.q, cols)
    k = archive.k
    adjacency = g.adjacency_lists
    for entry in archive.entries:
        y = entry.colors.tolist()
        fitness = entry.fitness
        # Traversal order and tie-breaks are randomized so that repeated
        # perturbations of a stalled incumbent explore different rewrites.
        for v in rng.permutation(cols).tolist():
            nb = adjacency[v]
            if not nb:
                continue
            counts = [0] * k
            for u in nb:
                counts[y[u]] += 1
            top = max(counts)
            candidates = [col for col in range(k) if counts[col] == top]
            c = candidates[int(rng.integers(len(candidates)))]
            for u in _shuffled(nb, rng):
                old = y[u]
                if old == c:
                    continue
                u_nb = adjacency[u]
                if any(y[w] == c for w in u_nb):
                    continue
                fitness -= sum(1 for w in u_nb if y[w] == old)
                y[u] = c
            counts = [0] * k
            for u in nb:
                counts[y[u]] += 1
            own = y[v]
            if counts[own] > 0:
                free = [col for col in range(k) if col != own and counts[col] == 0]
                if free:
                    y[v] = free[int(rng.integers(len(free)))]
                    fitness -= counts[own]
        entry.colors[:] = y
        assert fitness == _conflicts(g, entry.colors)
        entry.fitness = fitness
    archive.resort()


def run_inner(
    g: Graph,
    k: int,
    cfg: CqeaConfig,
    inherited: tuple[np.ndarray, QuantumMatrix] | None,
    rng: np.random.Generator,
    deadline: float | None = None,
) -> KLevelOutcome:
    """Minimize conflicting edges at a fixed color count k.

    Builds the population (nest 0 adopts the inherited genotype/coloring pair
    when one is supplied; the rest start in equal superposition), seeds the
    archive, runs archive-mode local search on it, then iterates decode /
    population-mode local search / archive update / cuckoo step /
    perturbation until the archive best is conflict-free or budgets run out.
    The initialization decode counts as iteration 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.n
    pop = cfg.pop_size if cfg.pop_size is not None else default_pop_size(n)
    nests: list[Nest] = []
    for i in range(pop):
        if i == 0 and inherited is not None:
            bits, q0 = inherited
            if bits.shape != (k, n) or (q0.k, q0.n) != (k, n):
                raise ValueError("inherited pair does not match level dimensions")
            colors = repair_colors(bits, rng)
        else:
            q0 = uniform_init(k, n)
            colors = repair_colors(measure(q0, rng), rng)
        nests.append(Nest(q0, colors, _conflicts(g, colors)))

    archive = Archive(k, cfg.archive_capacity)
    for nest in nests:
        archive.absorb(nest.colors, nest.fitness, nest.q)
    for entry in archive.entries:
        entry.colors, entry.fitness = _local_search_arrays(
            g, entry.colors, k, entry.fitness, True, rng, cfg.limit
        )
    archive.resort()

    iterations = 1
    success = archive.best_fitness == 0
    if not success:
        for t in range(1, cfg.max_inner + 1):
            if deadline is not None and time.perf_counter() > deadline:
                iterations = max(1, t - 1)
                break
            iterations = t
            for nest in nests:
                nest.colors = repair_colors(measure(nest.q, rng), rng)
                nest.fitness = _conflicts(g, nest.colors)
                nest.colors, nest.fitness = _local_search_arrays(
                    g, nest.colors, k, nest.fitness, False, rng, cfg.limit
                )
                archive.absorb(nest.colors, nest.fitness, nest.q)
            if archive.best_fitness == 0:
                success = True
                break
            cuckoo_step(g, nests, archive, cfg.levy, rng, cfg.keep_better)
            if archive.best_fitness == 0:
                success = True
                break
            perturbation(g, nests, archive, rng)
            if archive.best_fitness == 0:
                success = True
                break

    best = archive.best
    return KLevelOutcome(
        k=k,
        success=success,
        best=ColorAssignment(best.colors, k),
        inner_iterations_used=iterations,
        best_q=best.q,
    )


def run_cqea(
    g: Graph,
    cfg: CqeaConfig,
    instance: InstanceMeta | None = None,
) -> RunReport:
    """Full solve: walk k down from max_degree + 1 while levels keep
    succeeding.

    Each successful level is re-verified against the graph before being
    recorded. The next level inherits the winner: all-unused color rows are
    dropped at once, otherwise the least-used color row is removed and its
    orphaned vertices are repaired during the next initialization. The walk
    stops on the first failed level, when the generation budget is spent,
    when the recorded color count reaches target_k, or at one color.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    delta = max_degree(g)
    level_k = delta + 1
    max_outer = cfg.max_outer if cfg.max_outer is not None else level_k
    deadline = start + cfg.time_limit_s if cfg.time_limit_s is not None else None

    inherited: tuple[np.ndarray, QuantumMatrix] | None = None
    per_k: list[tuple[int, int]] = []
    recorded: tuple[int, ColorAssignment] | None = None
    last_outcome: KLevelOutcome | None = None

    for _ in range(max_outer):
        outcome = run_inner(g, level_k, cfg, inherited, rng, deadline)
        per_k.append((level_k, outcome.inner_iterations_used))
        last_outcome = outcome
        if not outcome.success:
            break
        if conflict_count(g, outcome.best) != 0:
            raise RuntimeError("solver reported success with an improper witness")
        recorded = (level_k, outcome.best)
        if cfg.target_k is not None and level_k <= cfg.target_k:
            break
        if level_k <= 1:
            break
        bits, q_next, next_k = inherit(outcome.best, outcome.best_q)
        inherited = (bits, q_next)
        level_k = next_k

    wall_ms = (time.perf_counter() - start) * 1000.0
    if instance is None:
        instance = InstanceMeta("graph", g.n, g.m, None)
    if recorded is not None:
        colors_found, witness = recorded
        conflicts = 0
    else:
        assert last_outcome is not None
        witness = last_outcome.best
        colors_found = last_outcome.k
        conflicts = conflict_count(g, witness)
    return RunReport(
        instance=instance,
        config=cfg,
        colors_found=colors_found,
        conflicts=conflicts,
        per_k_iterations=tuple(per_k),
        wall_ms=wall_ms,
        witness=witness,
    )
