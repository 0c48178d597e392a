"""Undirected simple graphs, DIMACS .col ingestion, and conflict evaluation.

Vertices are 0-indexed everywhere in the Python API. The DIMACS text format
(and every other serialized format in this package) is 1-indexed; conversion
happens only at parse/serialize time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "Graph",
    "InstanceMeta",
    "DimacsParseError",
    "parse_dimacs",
    "load_dimacs",
    "serialize_dimacs",
    "max_degree",
    "conflict_count",
    "conflict_vertices",
]


class DimacsParseError(ValueError):
    """Raised on malformed DIMACS input. Carries the offending line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class Graph:
    """Immutable undirected simple graph.

    Edges are stored as parallel arrays (edge_u[i], edge_v[i]) with u < v,
    deduplicated and sorted; adjacency is a tuple of sorted neighbor arrays.
    ``declared_edges`` keeps the edge count announced by a DIMACS header (may
    differ from ``m`` when the file contained duplicates) and
    ``duplicate_edges`` counts how many duplicate lines were collapsed.
    """

    __slots__ = (
        "n",
        "edge_u",
        "edge_v",
        "adjacency",
        "adjacency_lists",
        "declared_edges",
        "duplicate_edges",
    )

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        *,
        declared_edges: int | None = None,
        duplicate_edges: int = 0,
    ):
        if n < 1:
            raise ValueError(f"vertex count must be positive, got {n}")
        seen: set[tuple[int, int]] = set()
        dupes = 0
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) outside 0..{n - 1}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                dupes += 1
            else:
                seen.add(key)
        ordered = sorted(seen)
        eu = np.array([e[0] for e in ordered], dtype=np.intp)
        ev = np.array([e[1] for e in ordered], dtype=np.intp)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in ordered:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(np.array(sorted(a), dtype=np.intp) for a in adj)
        for a in adjacency:
            a.setflags(write=False)
        eu.setflags(write=False)
        ev.setflags(write=False)
        self.n = n
        self.edge_u = eu
        self.edge_v = ev
        self.adjacency = adjacency
        # Plain-list mirror of adjacency for tight interpreter loops.
        self.adjacency_lists = tuple(a.tolist() for a in adjacency)
        self.declared_edges = declared_edges
        self.duplicate_edges = duplicate_edges + dupes

    @property
    def m(self) -> int:
        """Number of distinct edges."""
        return len(self.edge_u)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of (u, v) pairs with u < v."""
        return list(zip(self.edge_u.tolist(), self.edge_v.tolist()))

    def neighbors(self, v: int) -> np.ndarray:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.edge_u, other.edge_u)
            and np.array_equal(self.edge_v, other.edge_v)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edge_u.tobytes(), self.edge_v.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class InstanceMeta:
    """Benchmark instance metadata: name, size, and best known color count."""

    name: str
    n: int
    m: int
    best_known: int | None = None

    def __post_init__(self):
        if self.best_known is not None and not (1 <= self.best_known <= self.n):
            raise ValueError(f"best_known {self.best_known} outside 1..{self.n}")


def parse_dimacs(text: str | Iterable[str]) -> Graph:
    """Parse DIMACS .col text into a Graph.

    Accepts comment lines (``c``), exactly one ``p edge N M`` header, and
    ``e u v`` lines with 1-indexed vertices. Duplicate edges (in either
    orientation) are collapsed and counted on the returned graph. Tolerates
    blank lines, trailing whitespace, and CRLF endings.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in text]

    n: int | None = None
    declared_m: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    dupes = 0

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "p":
            if n is not None:
                raise DimacsParseError("duplicate 'p' line", line_no)
            if len(fields) != 4 or fields[1] not in ("edge", "edges", "col"):
                raise DimacsParseError(f"malformed problem line {line!r}", line_no)
            try:
                n = int(fields[2])
                declared_m = int(fields[3])
            except ValueError:
                raise DimacsParseError(f"non-integer token in {line!r}", line_no) from None
            if n < 1:
                raise DimacsParseError(f"vertex count must be positive, got {n}", line_no)
        elif kind == "e":
            if n is None:
                raise DimacsParseError("'e' line before 'p' line", line_no)
            if len(fields) != 3:
                raise DimacsParseError(f"malformed edge line {line!r}", line_no)
            try:
                u = int(fields[1])
                v = int(fields[2])
            except ValueError:
                raise DimacsParseError(f"non-integer token in {line!r}", line_no) from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise DimacsParseError(f"vertex index out of range in {line!r}", line_no)
            if u == v:
                raise DimacsParseError(f"self-loop in {line!r}", line_no)
            key = (u - 1, v - 1) if u < v else (v - 1, u - 1)
            if key in seen:
                dupes += 1
            else:
                seen.add(key)
                edges.append(key)
        else:
            raise DimacsParseError(f"unrecognized line {line!r}", line_no)

    if n is None:
        raise DimacsParseError("missing 'p' line")
    return Graph(n, edges, declared_edges=declared_m, duplicate_edges=dupes)


def load_dimacs(path) -> Graph:
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        return parse_dimacs(fh.read())


def serialize_dimacs(g: Graph, name: str | None = None) -> str:
    """Render a graph in DIMACS .col form (1-indexed, one edge per line)."""
    out = []
    if name:
        out.append(f"c {name}")
    out.append(f"p edge {g.n} {g.m}")
    for u, v in zip(g.edge_u.tolist(), g.edge_v.tolist()):
        out.append(f"e {u + 1} {v + 1}")
    return "\n".join(out) + "\n"


def max_degree(g: Graph) -> int:
    """Largest vertex degree; 0 for edgeless graphs."""
    if g.n == 0:
        return 0
    return max(len(a) for a in g.adjacency)


def _colors_of(a, n: int) -> np.ndarray:
    colors = np.asarray(getattr(a, "colors", a))
    if colors.shape != (n,):
        raise ValueError(f"assignment length {colors.shape} does not match n={n}")
    return colors


def conflict_count(g: Graph, a) -> int:
    """Number of edges whose endpoints share a color.

    ``a`` is a ColorAssignment or any length-n integer sequence. Returns 0
    iff the assignment is a proper coloring.
    """
    colors = _colors_of(a, g.n)
    if g.m == 0:
        return 0
    return int(np.count_nonzero(colors[g.edge_u] == colors[g.edge_v]))


def conflict_vertices(g: Graph, a) -> np.ndarray:
    """Sorted array of vertices incident to at least one conflicting edge."""
    colors = _colors_of(a, g.n)
    if g.m == 0:
        return np.empty(0, dtype=np.intp)
    bad = colors[g.edge_u] == colors[g.edge_v]
    return np.unique(np.concatenate([g.edge_u[bad], g.edge_v[bad]]))
