"""Scikit-learn style wrappers around the depth engine.

``HalfspaceDepth`` follows the fit/score convention of sklearn's density
estimators: ``fit`` stores the reference sample, ``score_samples`` returns
the depth of query points with respect to it. ``SimplexCoordinates`` is a
transformer that moves compositional data to and from the isometric
(k-1)-dimensional coordinates in which depth is computed.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError
from sklearn.utils.validation import check_array

from .depth import DepthResult, depth_approx, depth_brute, depth_exact_2d
from .geometry import embed_simplex, helmert_basis, lift_planar

__all__ = ["HalfspaceDepth", "SimplexCoordinates"]


class SimplexCoordinates(TransformerMixin, BaseEstimator):
    """Isometric affine coordinates for compositional data.

    ``transform`` maps (n, k) compositions to (n, k-1) Euclidean coordinates
    (barycentre at the origin, distances preserved); ``inverse_transform``
    maps back onto the sum-to-one hyperplane.
    """

    def fit(self, X, y=None):
        X = check_array(X)
        if X.shape[1] < 2:
            raise ValueError("compositions need at least 2 columns")
        self.n_features_in_ = X.shape[1]
        self.basis_ = helmert_basis(X.shape[1])
        return self

    def transform(self, X):
        self._check_fitted()
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        return embed_simplex(X)

    def inverse_transform(self, Y):
        self._check_fitted()
        Y = check_array(Y)
        if Y.shape[1] != self.n_features_in_ - 1:
            raise ValueError(
                f"expected {self.n_features_in_ - 1} columns, got {Y.shape[1]}")
        return lift_planar(Y)

    def _check_fitted(self):
        if not hasattr(self, "basis_"):
            raise NotFittedError("SimplexCoordinates is not fitted yet")


class HalfspaceDepth(BaseEstimator):
    """Halfspace depth of query points with respect to a fitted sample.

    Parameters
    ----------
    method : {"exact", "brute", "approx"}
        "exact" uses the planar angular sweep (2-d data, or compositions
        with k=3 when ``simplex_input`` is on); "brute" the exhaustive
        oracle; "approx" the seeded random-direction upper bound.
    simplex_input : bool
        When True, rows of X are compositions and depth is computed in
        isometric embedded coordinates (depth is invariant under the
        embedding).
    num_directions : int
        Directions drawn by the "approx" method.
    seed : int
        Stream seed for the "approx" method.
    """

    def __init__(self, method: str = "exact", simplex_input: bool = False,
                 num_directions: int = 1000, seed: int = 0):
        self.method = method
        self.simplex_input = simplex_input
        self.num_directions = num_directions
        self.seed = seed

    def fit(self, X, y=None):
        if self.method not in ("exact", "brute", "approx"):
            raise ValueError(f"unknown method {self.method!r}")
        X = check_array(X)
        self.n_features_in_ = X.shape[1]
        if self.simplex_input:
            self.embedder_ = SimplexCoordinates().fit(X)
            self.sample_ = self.embedder_.transform(X)
        else:
            self.sample_ = np.asarray(X, dtype=float)
        if self.method == "exact" and self.sample_.shape[1] != 2:
            raise ValueError(
                "method='exact' needs 2-d points (or k=3 compositions with "
                f"simplex_input=True); fitted dimension is {self.sample_.shape[1]}")
        return self

    def depth_result(self, theta) -> DepthResult:
        """Full depth result (exact rational count and witness) for one point."""
        self._check_fitted()
        theta = np.asarray(theta, dtype=float).reshape(-1)
        if theta.size != self.n_features_in_:
            raise ValueError(f"theta has length {theta.size}, "
                             f"expected {self.n_features_in_}")
        if self.simplex_input:
            theta = self.embedder_.transform(theta.reshape(1, -1))[0]
        if self.method == "exact":
            return depth_exact_2d(theta, self.sample_)
        if self.method == "brute":
            return depth_brute(theta, self.sample_)
        return depth_approx(theta, self.sample_, self.num_directions, self.seed)

    def score_samples(self, X) -> np.ndarray:
        """Depth of each row of X as floats."""
        self._check_fitted()
        X = check_array(X)
        return np.array([float(self.depth_result(row)) for row in X])

    def _check_fitted(self):
        if not hasattr(self, "sample_"):
            raise NotFittedError("HalfspaceDepth is not fitted yet")
