"""Independent ground-truth colorers used by tests and the acceptance suite.

exact_chromatic is a plain branch-and-bound backtracker, deliberately simple:
it certifies chromatic numbers of small graphs, nothing more. greedy_coloring
and dsatur_bound provide classical upper bounds for sanity checks on graphs
too large for the exact search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coloring import ColorAssignment
from .graph import Graph, conflict_count, max_degree

__all__ = [
    "ExactResult",
    "BudgetExceededError",
    "exact_chromatic",
    "greedy_coloring",
    "dsatur_bound",
]


class BudgetExceededError(RuntimeError):
    """Search node budget exhausted; the instance is too large for the oracle."""


@dataclass(frozen=True)
class ExactResult:
    chromatic: int
    witness: ColorAssignment
    nodes_explored: int


def greedy_coloring(g: Graph, order: Sequence[int]) -> ColorAssignment:
    """First-fit greedy along ``order``; uses at most max_degree(g)+1 colors."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of all vertices")
    colors = np.full(g.n, -1, dtype=np.intp)
    for v in order:
        used = {int(colors[u]) for u in g.adjacency[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return ColorAssignment(colors, int(colors.max()) + 1)


def dsatur_bound(g: Graph) -> ColorAssignment:
    """Saturation-degree greedy; ties broken by degree then lowest index."""
    colors = np.full(g.n, -1, dtype=np.intp)
    neighbor_colors: list[set[int]] = [set() for _ in range(g.n)]
    degrees = [len(a) for a in g.adjacency]
    uncolored = set(range(g.n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(neighbor_colors[u]), degrees[u], -u))
        used = neighbor_colors[v]
        c = 0
        while c in used:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for u in g.adjacency[v]:
            if colors[u] < 0:
                neighbor_colors[u].add(c)
    return ColorAssignment(colors, int(colors.max()) + 1)


def exact_chromatic(g: Graph, budget: int = 10_000_000) -> ExactResult:
    """Exact chromatic number by backtracking with symmetry breaking.

    Vertices are explored in descending-degree order and a vertex may only
    open one color beyond those already in use, so color relabelings are
    never revisited. Starts from the DSATUR bound and tightens it. Raises
    BudgetExceededError when more than ``budget`` search nodes are visited.
    """
    ub_assignment = dsatur_bound(g)
    best_k = ub_assignment.k
    best_colors = np.asarray(ub_assignment.colors).copy()
    if g.m == 0:
        return ExactResult(1, ColorAssignment(np.zeros(g.n, dtype=np.intp), 1), 0)

    order = sorted(range(g.n), key=lambda v: -len(g.adjacency[v]))
    adj = [g.adjacency[v] for v in order]
    colors = [-1] * g.n  # indexed by position in `order`
    pos_of = {v: i for i, v in enumerate(order)}
    nodes = 0

    def backtrack(i: int, used: int) -> None:
        nonlocal nodes, best_k, best_colors
        if used >= best_k:
            return
        if i == g.n:
            best_k = used
            out = np.empty(g.n, dtype=np.intp)
            for pos, v in enumerate(order):
                out[v] = colors[pos]
            best_colors = out
            return
        nodes += 1
        if nodes > budget:
            raise BudgetExceededError(f"exceeded {budget} search nodes")
        forbidden = 0
        for u in adj[i]:
            cu = colors[pos_of[int(u)]]
            if cu >= 0:
                forbidden |= 1 << cu
        limit = min(used + 1, best_k - 1)
        for c in range(limit):
            if forbidden >> c & 1:
                continue
            colors[i] = c
            backtrack(i + 1, max(used, c + 1))
            colors[i] = -1

    backtrack(0, 0)
    witness = ColorAssignment(best_colors, best_k)
    assert conflict_count(g, witness) == 0
    assert witness.k <= max_degree(g) + 1
    return ExactResult(best_k, witness, nodes)
