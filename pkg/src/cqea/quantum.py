"""Quantum-style probabilistic genotypes and their amplitude-space moves.

Each genotype is a k x n table of amplitude pairs (alpha, beta) where
alpha[i, j]^2 is the probability of giving vertex j color i. Amplitudes are
stored as angles theta in [0, pi/2] with alpha = cos(theta), beta =
sin(theta), so alpha^2 + beta^2 = 1 holds structurally no matter how the
angles are perturbed. Only the squared magnitudes are ever consumed, so
nonnegative amplitudes lose nothing.

Moves implemented here: quantum measurement, the equal-superposition and
inherited initializations, Levy-flight and random-walk perturbations (the
cuckoo operators), and per-column resets used by the conflict-driven
perturbation strategy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coloring import ColorAssignment, to_binary_matrix

__all__ = [
    "QuantumMatrix",
    "LevyParams",
    "uniform_init",
    "measure",
    "levy_steps",
    "levy_flight",
    "random_walk",
    "reset_columns",
    "inherit",
]

HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class QuantumMatrix:
    """k x n angle matrix; alpha = cos(theta), beta = sin(theta)."""

    thetas: np.ndarray

    def __post_init__(self):
        thetas = np.asarray(self.thetas, dtype=np.float64)
        if thetas.ndim != 2 or thetas.shape[0] < 1 or thetas.shape[1] < 1:
            raise ValueError("thetas must be a k x n matrix with k, n >= 1")
        if thetas.min() < 0.0 or thetas.max() > HALF_PI:
            raise ValueError("angles must lie in [0, pi/2]")
        thetas = thetas.copy()
        thetas.setflags(write=False)
        object.__setattr__(self, "thetas", thetas)

    @classmethod
    def _wrap(cls, thetas: np.ndarray) -> "QuantumMatrix":
        """Adopt a freshly built array already known to satisfy the
        invariants, skipping validation and the defensive copy."""
        obj = object.__new__(cls)
        thetas.setflags(write=False)
        object.__setattr__(obj, "thetas", thetas)
        return obj

    @property
    def k(self) -> int:
        return self.thetas.shape[0]

    @property
    def n(self) -> int:
        return self.thetas.shape[1]

    @property
    def alpha(self) -> np.ndarray:
        return np.cos(self.thetas)

    @property
    def beta(self) -> np.ndarray:
        return np.sin(self.thetas)

    def alpha_sq(self) -> np.ndarray:
        """Per-cell probability of measuring a 1."""
        a = np.cos(self.thetas)
        return a * a


@dataclass(frozen=True)
class LevyParams:
    """Cuckoo move parameters.

    The heavy-tail exponent must lie in (1, 2]; scales are dimensionless
    multipliers applied to angle increments; walk_fraction is the per-entry
    probability of being perturbed during a random walk.
    """

    exponent: float = 1.5
    step_scale: float = 0.1
    walk_scale: float = 0.1
    walk_fraction: float = 0.25

    def __post_init__(self):
        if not 1.0 < self.exponent <= 2.0:
            raise ValueError(f"exponent must be in (1, 2], got {self.exponent}")
        if self.step_scale < 0 or self.walk_scale < 0:
            raise ValueError("scales must be >= 0")
        if not 0.0 <= self.walk_fraction <= 1.0:
            raise ValueError(f"walk_fraction must be in [0, 1], got {self.walk_fraction}")


def uniform_init(k: int, n: int) -> QuantumMatrix:
    """Equal superposition: every cell at theta = pi/4, alpha = beta = 1/sqrt(2)."""
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    return QuantumMatrix(np.full((k, n), math.pi / 4.0))


def measure(q: QuantumMatrix, rng: np.random.Generator) -> np.ndarray:
    """Collapse to a raw binary matrix: cell-wise Bernoulli(alpha^2).

    Columns may end up with zero or several 1s; callers repair the result
    before treating it as a coloring.
    """
    return (rng.random(q.thetas.shape) < q.alpha_sq()).astype(np.uint8)


def _mantegna_sigma(exponent: float) -> float:
    lam = exponent
    num = math.gamma(1.0 + lam) * math.sin(math.pi * lam / 2.0)
    den = math.gamma((1.0 + lam) / 2.0) * lam * 2.0 ** ((lam - 1.0) / 2.0)
    return (num / den) ** (1.0 / lam)


def levy_steps(exponent: float, size, rng: np.random.Generator) -> np.ndarray:
    """Heavy-tailed steps via Mantegna's method: L = u / |v|^(1/lambda).

    u ~ N(0, sigma_u^2) with the standard sigma_u formula, v ~ N(0, 1). The
    survival function of |L| decays like t^(-lambda).
    """
    sigma = _mantegna_sigma(exponent)
    u = rng.normal(0.0, sigma, size=size)
    v = rng.normal(0.0, 1.0, size=size)
    v = np.where(v == 0.0, np.finfo(np.float64).tiny, v)
    return u / np.abs(v) ** (1.0 / exponent)


def levy_flight(q: QuantumMatrix, p: LevyParams, rng: np.random.Generator) -> QuantumMatrix:
    """Perturb every angle by a scaled Levy step, clamped back to [0, pi/2]."""
    steps = levy_steps(p.exponent, q.thetas.shape, rng)
    thetas = np.clip(q.thetas + p.step_scale * steps, 0.0, HALF_PI)
    return QuantumMatrix._wrap(thetas)


def random_walk(q: QuantumMatrix, p: LevyParams, rng: np.random.Generator) -> QuantumMatrix:
    """Perturb a random subset of angles by uniform steps on [-scale, scale]."""
    mask = rng.random(q.thetas.shape) < p.walk_fraction
    steps = rng.uniform(-1.0, 1.0, size=q.thetas.shape)
    moved = np.clip(q.thetas + p.walk_scale * steps, 0.0, HALF_PI)
    return QuantumMatrix._wrap(np.where(mask, moved, q.thetas))


def reset_columns(q: QuantumMatrix, cols) -> QuantumMatrix:
    """Return a copy with the given vertex columns reset to equal superposition."""
    cols = np.asarray(cols, dtype=np.intp)
    if cols.size == 0:
        return q
    if cols.min() < 0 or cols.max() >= q.n:
        raise ValueError(f"column index outside 0..{q.n - 1}")
    thetas = q.thetas.copy()
    thetas[:, cols] = math.pi / 4.0
    return QuantumMatrix._wrap(thetas)


def inherit(
    a: ColorAssignment, q: QuantumMatrix
) -> tuple[np.ndarray, QuantumMatrix, int]:
    """Seed a (k-dropping) restart from a k-color solution and its genotype.

    Rows of the binary view of ``a`` that contain no 1 are unused colors:
    delete them all (and the matching amplitude rows), giving k' = k - row0.
    When every row is used, delete the row with the fewest 1s instead (ties
    break to the lowest index), leaving that row's vertices column-empty for
    the caller to repair; k' = k - 1. Surviving amplitude rows are preserved
    bit-exactly.

    Returns (raw binary matrix with k' rows, trimmed genotype, k').
    """
    if (a.k, a.n) != (q.k, q.n):
        raise ValueError(f"assignment {a.k}x{a.n} and genotype {q.k}x{q.n} differ")
    bits = to_binary_matrix(a)
    ones_per_row = bits.sum(axis=1)
    zero_rows = ones_per_row == 0
    if zero_rows.any():
        keep = ~zero_rows
    else:
        keep = np.ones(a.k, dtype=bool)
        keep[int(np.argmin(ones_per_row))] = False
    new_k = int(keep.sum())
    if new_k < 1:
        raise ValueError("cannot inherit below one color")
    return bits[keep], QuantumMatrix._wrap(q.thetas[keep]), new_k
