"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

COMPOSITION_SUM_TOL = 1e-12


def as_point_matrix(points, *, name: str = "points") -> np.ndarray:
    """Coerce ``points`` to a finite float matrix of shape (n, d)."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d array, got ndim={arr.ndim}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


def as_point_vector(point, *, dim: int | None = None, name: str = "point") -> np.ndarray:
    """Coerce ``point`` to a finite float vector, optionally of fixed length."""
    vec = np.asarray(point, dtype=float).reshape(-1)
    if vec.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(vec)):
        raise ValueError(f"{name} contains non-finite values")
    if dim is not None and vec.size != dim:
        raise ValueError(f"{name} has length {vec.size}, expected {dim}")
    return vec


def as_composition_matrix(points, *, k: int | None = None,
                          sum_tol: float = COMPOSITION_SUM_TOL,
                          name: str = "compositions") -> np.ndarray:
    """Validate an (n, k) matrix of simplex points: nonnegative rows summing to 1.

    Row sums must match 1 within ``sum_tol`` (absolute).
    """
    arr = as_point_matrix(points, name=name)
    if k is not None and arr.shape[1] != k:
        raise ValueError(f"{name} has {arr.shape[1]} columns, expected k={k}")
    if arr.shape[1] < 2:
        raise ValueError(f"{name} needs at least 2 columns, got {arr.shape[1]}")
    if np.any(arr < 0):
        raise ValueError(f"{name} contains negative coordinates")
    sums = arr.sum(axis=1)
    bad = np.abs(sums - 1.0) > sum_tol
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ValueError(
            f"{name}[{i}] sums to {sums[i]!r}, outside 1 +/- {sum_tol:g}")
    return arr


def as_composition(point, *, k: int | None = None,
                   sum_tol: float = COMPOSITION_SUM_TOL,
                   name: str = "composition") -> np.ndarray:
    """Validate a single simplex point."""
    vec = as_point_vector(point, name=name)
    return as_composition_matrix(vec.reshape(1, -1), k=k, sum_tol=sum_tol,
                                 name=name)[0]


def check_seed(seed) -> int:
    """Validate a 64-bit unsigned seed."""
    s = int(seed)
    if s != seed:
        raise ValueError(f"seed must be an integer, got {seed!r}")
    if not 0 <= s < 2 ** 64:
        raise ValueError(f"seed must be in [0, 2^64), got {s}")
    return s
