"""Color assignments, the binary-matrix view, measurement repair, and the
solution text format.

A coloring of n vertices with k colors is stored densely as an int array with
entries in 0..k-1. The equivalent k x n binary matrix (exactly one 1 per
column) is exposed as a view for the quantum operators; matrices produced by
quantum measurement may violate the column constraint and must go through
:func:`repair` before they are usable assignments.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, conflict_count

__all__ = [
    "ColorAssignment",
    "to_binary_matrix",
    "from_binary_matrix",
    "repair",
    "repair_colors",
    "alternative_colors",
    "format_solution",
    "parse_solution",
    "SolutionFormatError",
]


@dataclass(frozen=True)
class ColorAssignment:
    """Per-vertex color indices in 0..k-1 plus the active color count k."""

    colors: np.ndarray
    k: int

    def __post_init__(self):
        colors = np.asarray(self.colors, dtype=np.intp)
        if self.k < 1:
            raise ValueError(f"color count must be >= 1, got {self.k}")
        if colors.ndim != 1:
            raise ValueError("colors must be a flat sequence")
        if colors.size and (colors.min() < 0 or colors.max() >= self.k):
            raise ValueError(f"color entries must lie in 0..{self.k - 1}")
        colors = colors.copy()
        colors.setflags(write=False)
        object.__setattr__(self, "colors", colors)

    @property
    def n(self) -> int:
        return len(self.colors)

    def colors_used(self) -> int:
        """Number of distinct colors actually present."""
        return len(np.unique(self.colors))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColorAssignment):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.colors, other.colors)

    def __hash__(self) -> int:
        return hash((self.k, self.colors.tobytes()))


def to_binary_matrix(a: ColorAssignment) -> np.ndarray:
    """k x n 0/1 matrix with bits[i, j] = 1 iff vertex j has color i."""
    bits = np.zeros((a.k, a.n), dtype=np.uint8)
    bits[a.colors, np.arange(a.n)] = 1
    return bits


def from_binary_matrix(bits: np.ndarray) -> ColorAssignment:
    """Inverse of :func:`to_binary_matrix`; requires exactly one 1 per column."""
    bits = np.asarray(bits)
    if bits.ndim != 2:
        raise ValueError("binary matrix must be 2-D")
    if not np.array_equal(bits.sum(axis=0), np.ones(bits.shape[1], dtype=bits.dtype)):
        raise ValueError("matrix has a column without exactly one 1; repair it first")
    return ColorAssignment(bits.argmax(axis=0), bits.shape[0])


def repair_colors(bits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Array-level repair: collapse a raw measurement to one color per vertex.

    Columns with several 1s pick one of them uniformly at random, empty
    columns pick a uniform random color, and columns that already hold a
    single 1 keep it regardless of the random source.
    """
    bits = np.asarray(bits)
    k, n = bits.shape
    # Strictly positive iid scores so argmax is the lone 1 in clean columns
    # and a uniform pick among the 1s elsewhere.
    scores = (rng.random((k, n)) + 0.5) * bits
    colors = scores.argmax(axis=0)
    empty = ~bits.any(axis=0)
    if empty.any():
        colors[empty] = rng.integers(0, k, size=int(empty.sum()))
    return colors


def repair(bits: np.ndarray, rng: np.random.Generator) -> ColorAssignment:
    """Repair a raw k x n binary matrix into a valid ColorAssignment."""
    bits = np.asarray(bits)
    if bits.ndim != 2 or bits.shape[0] < 1:
        raise ValueError("binary matrix must be k x n with k >= 1")
    return ColorAssignment(repair_colors(bits, rng), bits.shape[0])


def alternative_colors(g: Graph, a: ColorAssignment, v: int) -> np.ndarray:
    """Colors that differ from v's own and appear on none of its neighbors.

    Sorted ascending. Recoloring v to any returned color never increases the
    conflict count, and strictly decreases it when v is conflicting.
    """
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    counts = np.bincount(a.colors[g.adjacency[v]], minlength=a.k)
    free = np.flatnonzero(counts == 0)
    return free[free != a.colors[v]]


class SolutionFormatError(ValueError):
    pass


def format_solution(g: Graph, a: ColorAssignment) -> str:
    """Solution text: ``s k <K> f <conflicts>`` then one ``v <vertex> <color>``
    line per vertex, all 1-indexed. Conflicts are recomputed here, never
    trusted from solver state."""
    lines = [f"s k {a.k} f {conflict_count(g, a)}"]
    for v, c in enumerate(a.colors.tolist()):
        lines.append(f"v {v + 1} {c + 1}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[ColorAssignment, int]:
    """Parse the ``s``/``v`` solution format.

    Returns (assignment, declared_conflicts). Raises SolutionFormatError on
    malformed lines, duplicate or missing vertices, or colors outside 1..K.
    """
    k = None
    declared_f = None
    assigned: dict[int, int] = {}
    max_vertex = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "s":
            if k is not None:
                raise SolutionFormatError(f"line {line_no}: duplicate 's' line")
            if len(fields) != 5 or fields[1] != "k" or fields[3] != "f":
                raise SolutionFormatError(f"line {line_no}: malformed 's' line {line!r}")
            try:
                k = int(fields[2])
                declared_f = int(fields[4])
            except ValueError:
                raise SolutionFormatError(f"line {line_no}: non-integer token") from None
            if k < 1:
                raise SolutionFormatError(f"line {line_no}: k must be >= 1")
        elif fields[0] == "v":
            if k is None:
                raise SolutionFormatError(f"line {line_no}: 'v' line before 's' line")
            if len(fields) != 3:
                raise SolutionFormatError(f"line {line_no}: malformed 'v' line {line!r}")
            try:
                vertex = int(fields[1])
                color = int(fields[2])
            except ValueError:
                raise SolutionFormatError(f"line {line_no}: non-integer token") from None
            if vertex < 1:
                raise SolutionFormatError(f"line {line_no}: vertex index must be >= 1")
            if not 1 <= color <= k:
                raise SolutionFormatError(f"line {line_no}: color {color} outside 1..{k}")
            if vertex in assigned:
                raise SolutionFormatError(f"line {line_no}: duplicate vertex {vertex}")
            assigned[vertex] = color
            max_vertex = max(max_vertex, vertex)
        else:
            raise SolutionFormatError(f"line {line_no}: unrecognized line {line!r}")
    if k is None:
        raise SolutionFormatError("missing 's' line")
    missing = [v for v in range(1, max_vertex + 1) if v not in assigned]
    if missing:
        raise SolutionFormatError(f"vertex coverage incomplete: missing {missing[:5]}")
    colors = np.array([assigned[v] - 1 for v in range(1, max_vertex + 1)], dtype=np.intp)
    return ColorAssignment(colors, k), int(declared_f)
