"""Halfspace depth for compositional data on the probability simplex.

Core surfaces:

* depth engine: :func:`depth_exact_2d`, :func:`depth_brute`,
  :func:`depth_approx` (or the sklearn-style :class:`HalfspaceDepth`);
* samplers for the normalized-i.i.d. model: :func:`sample_composition`,
  :func:`sample_uniform_simplex`;
* closed-form maximal depth and its Monte Carlo oracle:
  :func:`max_depth_gamma`, :func:`max_depth_limit_gamma`, :func:`max_depth_mc`;
* majorization / stochastic-ordering lab: :func:`is_majorized`,
  :func:`empirical_stochastic_order`, :func:`eaton_olshen_probe`;
* experiment runners in :mod:`simplexdepth.experiments` and a CLI
  (``simplexdepth``).
"""

from .depth import (
    BudgetExceededError,
    DepthResult,
    depth_approx,
    depth_brute,
    depth_exact_2d,
)
from .geometry import embed_point, embed_simplex, helmert_basis, lift_planar
from .maxdepth import (
    MaxDepthValue,
    max_depth_gamma,
    max_depth_limit_gamma,
    max_depth_mc,
)
from .ordering import (
    CounterexampleRecord,
    OrderingVerdict,
    counterexample_search,
    eaton_olshen_probe,
    empirical_stochastic_order,
    is_majorized,
)
from .sampling import (
    DistributionSpec,
    EmpiricalSample,
    derive_seed,
    mean_vector,
    sample_composition,
    sample_positive,
    sample_uniform_simplex,
)
from .special import (
    NonConvergenceError,
    regularized_incomplete_beta,
    regularized_lower_gamma,
    regularized_upper_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "CounterexampleRecord",
    "DepthResult",
    "DistributionSpec",
    "EmpiricalSample",
    "HalfspaceDepth",
    "MaxDepthValue",
    "NonConvergenceError",
    "OrderingVerdict",
    "SimplexCoordinates",
    "counterexample_search",
    "depth_approx",
    "depth_brute",
    "depth_exact_2d",
    "derive_seed",
    "eaton_olshen_probe",
    "embed_point",
    "embed_simplex",
    "empirical_stochastic_order",
    "helmert_basis",
    "is_majorized",
    "lift_planar",
    "max_depth_gamma",
    "max_depth_limit_gamma",
    "max_depth_mc",
    "mean_vector",
    "regularized_incomplete_beta",
    "regularized_lower_gamma",
    "regularized_upper_gamma",
    "sample_composition",
    "sample_positive",
    "sample_uniform_simplex",
    "__version__",
]


def __getattr__(name):
    # sklearn import is heavy; load the estimator layer on first use.
    if name in ("HalfspaceDepth", "SimplexCoordinates"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
