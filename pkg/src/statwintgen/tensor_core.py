"""Shared numerical kernel.

Dense matrix helpers (Frobenius norms, commutators), central finite
differences for scalar fields of several variables, and seeded generation of
constrained random matrices.  Everything here is double precision and pure:
inputs are never mutated, outputs are fresh arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

DEFAULT_FD_STEP = 1e-5


@dataclass(frozen=True)
class ScalarField:
    """A real-valued function of ``dim`` coordinates.

    ``evaluator`` must be deterministic for a given point.  Instances are
    callable, so plain functions and ScalarFields can be used interchangeably.
    """

    dim: int
    evaluator: Callable[[np.ndarray], float]

    def __call__(self, point: np.ndarray) -> float:
        return float(self.evaluator(np.asarray(point, dtype=float)))


def as_square_matrix(m) -> np.ndarray:
    """Validate and return a finite square matrix as a float ndarray."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def frobenius_norm_sq(m) -> float:
    """Sum of squared entries, sum_ij M_ij^2."""
    a = as_square_matrix(m)
    return float(np.sum(a * a))


def commutator(a, b) -> np.ndarray:
    """Matrix commutator AB - BA."""
    am = as_square_matrix(a)
    bm = as_square_matrix(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def central_difference(field, point, direction: int, step: float = DEFAULT_FD_STEP) -> float:
    """Second-order central difference of a scalar field along one axis.

    ``field`` is any callable point -> float (e.g. a :class:`ScalarField`).
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    p = np.asarray(point, dtype=float)
    if not (0 <= direction < p.size):
        raise ValueError(f"direction {direction} out of range for dim {p.size}")
    hi = p.copy()
    lo = p.copy()
    hi[direction] += step
    lo[direction] -= step
    f_hi = float(field(hi))
    f_lo = float(field(lo))
    if not (math.isfinite(f_hi) and math.isfinite(f_lo)):
        raise ValueError(f"non-finite field evaluation near {p.tolist()}")
    return (f_hi - f_lo) / (2.0 * step)


def instance_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent, reproducible stream for instance ``index`` under ``seed``.

    Every sweep element derives its own generator this way, so results do not
    depend on evaluation order.
    """
    return np.random.default_rng([int(seed), int(index)])


def random_symmetric_traceless(dim: int, count: int, seed: int) -> list[np.ndarray]:
    """`count` random symmetric trace-free matrices, deterministic per seed.

    Entries are drawn uniformly from [-1, 1], symmetrized, then projected onto
    the trace-zero subspace.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    for k in range(count):
        rng = instance_rng(seed, k)
        raw = rng.uniform(-1.0, 1.0, size=(dim, dim))
        sym = 0.5 * (raw + raw.T)
        sym -= (np.trace(sym) / dim) * np.eye(dim)
        out.append(sym)
    return out


def random_orthogonal(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random orthogonal matrix via QR with sign fixing."""
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.diag(r))


def symmetrize_upper(raw: np.ndarray) -> np.ndarray:
    """Mirror the upper triangle (including diagonal) onto the lower one."""
    a = np.triu(np.asarray(raw, dtype=float))
    return a + np.triu(a, 1).T


def sample_points(
    dim: int,
    count: int,
    rng: np.random.Generator,
    box: Sequence[tuple[float, float]] | None = None,
) -> np.ndarray:
    """Uniform sample points from a per-axis box (default [-1, 1]^dim)."""
    lo = np.full(dim, -1.0)
    hi = np.full(dim, 1.0)
    if box is not None:
        for axis, (a, b) in enumerate(box):
            lo[axis], hi[axis] = a, b
    return rng.uniform(lo, hi, size=(count, dim))
