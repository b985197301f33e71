"""Maximal halfspace depth of the normalized-i.i.d. model, in closed form.

For the gamma family (symmetric Dirichlet), the depth of the barycentre is
the tail probability P[X_1 >= 1/k] of one composition coordinate. The first
coordinate of a symmetric Dirichlet(alpha, ..., alpha) is Beta(alpha,
(k-1) alpha), giving 1 - I_{1/k}(alpha, (k-1) alpha). That Beta reduction is
a derived identity, not taken on faith: :func:`max_depth_mc` estimates the
same tail straight from the normalized construction and the test suite keeps
the two within binomial error bands.

As k grows the value decreases to P[V >= E V] for a single draw V, which for
Gamma(alpha, any rate) is Q(alpha, alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._validation import check_seed
from .sampling import DistributionSpec, first_coordinate_tail_count
from .special import regularized_incomplete_beta, regularized_upper_gamma

__all__ = [
    "MaxDepthValue",
    "max_depth_gamma",
    "max_depth_limit_gamma",
    "max_depth_mc",
]

CLOSED_FORM = "closed_form"
MONTE_CARLO = "monte_carlo"


@dataclass(frozen=True)
class MaxDepthValue:
    """A maximal-depth figure with its provenance.

    ``k`` is the dimension (``math.inf`` for the limiting value). For
    ``method == "monte_carlo"`` the fields ``n``, ``seed`` and ``std_error``
    describe the estimate; they are None for closed forms. ``within_proved_class``
    records whether the driving distribution satisfies the unimodal-at-zero
    hypothesis under which the closed form is the proved maximal depth; the
    value is still computed outside that class (it is still the barycentre
    tail probability; whether that tail is the maximal depth there is open).
    """

    value: float
    k: float
    spec: DistributionSpec
    method: str
    n: int | None = None
    seed: int | None = None
    std_error: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"value {self.value} outside [0, 1]")
        if self.method == MONTE_CARLO:
            if self.n is None or self.std_error is None or not self.std_error > 0:
                raise ValueError("monte_carlo values need n and a positive std_error")

    @property
    def within_proved_class(self) -> bool:
        return self.spec.unimodal_at_zero


def max_depth_gamma(k: int, alpha: float) -> MaxDepthValue:
    """Closed-form barycentre depth for the gamma family: 1 - I_{1/k}(a, (k-1)a)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    value = 1.0 - regularized_incomplete_beta(alpha, (k - 1) * alpha, 1.0 / k)
    return MaxDepthValue(value=value, k=k,
                         spec=DistributionSpec.gamma_shape(alpha),
                         method=CLOSED_FORM)


def max_depth_limit_gamma(alpha: float) -> MaxDepthValue:
    """Large-k limit of the gamma-family maximal depth: Q(alpha, alpha)."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    value = regularized_upper_gamma(alpha, alpha)
    return MaxDepthValue(value=value, k=math.inf,
                         spec=DistributionSpec.gamma_shape(alpha),
                         method=CLOSED_FORM)


def max_depth_mc(k: int, spec: DistributionSpec, n: int, seed) -> MaxDepthValue:
    """Monte Carlo estimate of P[first composition coordinate >= 1/k].

    Independent of the Beta reduction: samples the normalized construction
    directly. Returns the tail fraction with its binomial standard error
    sqrt(p(1-p)/n).
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seed = check_seed(seed)
    hits = first_coordinate_tail_count(k, spec, n, seed, 1.0 / k)
    p = hits / n
    se = math.sqrt(max(p * (1.0 - p), 1.0 / n) / n)
    return MaxDepthValue(value=p, k=k, spec=spec, method=MONTE_CARLO,
                         n=n, seed=seed, std_error=se)
