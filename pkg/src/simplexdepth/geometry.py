"""Isometric embedding of the probability simplex into Euclidean space.

Points with k nonnegative coordinates summing to one live on a
(k-1)-dimensional affine subset of R^k. A fixed orthonormal (Helmert-style)
basis of the zero-sum hyperplane, anchored at the barycentre, maps them onto
R^(k-1) without distorting distances. Halfspace depth is invariant under such
rigid maps, so depth computed in embedded coordinates equals depth on the
simplex.
"""

from __future__ import annotations

import numpy as np

from ._validation import as_composition_matrix, as_point_matrix

__all__ = ["helmert_basis", "embed_simplex", "embed_point", "lift_planar"]


def helmert_basis(k: int) -> np.ndarray:
    """Orthonormal basis of the zero-sum hyperplane in R^k, as a (k-1, k) matrix.

    Row j (1-based) is (1, ..., 1, -j, 0, ..., 0) / sqrt(j * (j + 1)) with j
    leading ones. Rows are orthonormal and each is orthogonal to the all-ones
    vector, so ``B x`` preserves Euclidean distance on zero-sum vectors.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    basis = np.zeros((k - 1, k))
    for j in range(1, k):
        basis[j - 1, :j] = 1.0
        basis[j - 1, j] = -j
        basis[j - 1] /= np.sqrt(j * (j + 1.0))
    return basis


def embed_simplex(points) -> np.ndarray:
    """Map an (n, k) matrix of simplex points to (n, k-1) embedded coordinates.

    The map is affine, deterministic and distance-preserving: the barycentre
    (1/k, ..., 1/k) goes to the origin and pairwise distances are unchanged.
    """
    arr = as_composition_matrix(points)
    k = arr.shape[1]
    basis = helmert_basis(k)
    return (arr - 1.0 / k) @ basis.T


def embed_point(point) -> np.ndarray:
    """Embed a single simplex point (length k) into R^(k-1)."""
    vec = np.asarray(point, dtype=float).reshape(1, -1)
    return embed_simplex(vec)[0]


def lift_planar(embedded) -> np.ndarray:
    """Inverse of :func:`embed_simplex`: map (n, k-1) embedded rows back to R^k.

    The result always lies on the sum-to-one hyperplane; coordinates may be
    slightly negative if the embedded point was outside the simplex.
    """
    arr = as_point_matrix(embedded, name="embedded")
    k = arr.shape[1] + 1
    basis = helmert_basis(k)
    return arr @ basis + 1.0 / k
