"""Cuckoo quantum evolutionary graph coloring.

A quantum-amplitude population evolved by cuckoo search minimizes conflicting
edges at a fixed color count, and an outer loop walks the color count down
toward the chromatic number, inheriting each level's winner. Includes DIMACS
ingestion, exact/greedy oracle colorers for verification, and a benchmark
harness with seeded, reproducible campaigns.
"""

from .coloring import ColorAssignment, alternative_colors, repair
from .graph import (
    Graph,
    InstanceMeta,
    DimacsParseError,
    conflict_count,
    conflict_vertices,
    load_dimacs,
    max_degree,
    parse_dimacs,
    serialize_dimacs,
)
from .oracle import dsatur_bound, exact_chromatic, greedy_coloring
from .quantum import LevyParams, QuantumMatrix, measure, uniform_init
from .search import CqeaConfig, RunReport, local_search, run_cqea, run_inner

__version__ = "0.1.0"

__all__ = [
    "ColorAssignment",
    "alternative_colors",
    "repair",
    "Graph",
    "InstanceMeta",
    "DimacsParseError",
    "conflict_count",
    "conflict_vertices",
    "load_dimacs",
    "max_degree",
    "parse_dimacs",
    "serialize_dimacs",
    "dsatur_bound",
    "exact_chromatic",
    "greedy_coloring",
    "LevyParams",
    "QuantumMatrix",
    "measure",
    "uniform_init",
    "CqeaConfig",
    "RunReport",
    "local_search",
    "run_cqea",
    "run_inner",
    "__version__",
]
