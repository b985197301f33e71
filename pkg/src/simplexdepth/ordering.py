"""Majorization and empirical stochastic-ordering probes.

The ratio comparison W / sum(a_l Q_l) vs W / sum(b_l Q_l), with ``a``
majorized by ``b``, W unimodal at zero and Q exchangeable positive, is the
stochastic-ordering engine behind the maximal-depth results. It provably
holds for unimodal-at-zero W; simulations show it can fail for gamma shapes
above one. This module tests the ordering empirically with distribution-free
DKW bands and searches for such failures.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from math import log, sqrt

import numpy as np

from ._validation import check_seed
from .sampling import DistributionSpec, derive_seed, sample_positive

__all__ = [
    "OrderingVerdict",
    "CounterexampleRecord",
    "is_majorized",
    "empirical_stochastic_order",
    "eaton_olshen_probe",
    "counterexample_search",
    "random_majorization_pair",
    "write_counterexample_csv",
]

CONSISTENT = "consistent"
VIOLATED = "violated"

MAJORIZATION_TOL = 1e-12


@dataclass(frozen=True)
class OrderingVerdict:
    """Outcome of a one-sided empirical stochastic-dominance test.

    ``gap`` is the largest adverse difference sup_t [S_x(t) - S_y(t)] of the
    empirical survival functions (positive when the x-sample looks
    stochastically larger somewhere), ``worst_t`` the threshold attaining it,
    and ``band`` the two-sample DKW tolerance the gap was compared against.
    """

    status: str
    worst_t: float
    gap: float
    band: float

    def __post_init__(self):
        if self.status not in (CONSISTENT, VIOLATED):
            raise ValueError(f"unknown status {self.status!r}")
        if not (np.isfinite(self.worst_t) and np.isfinite(self.gap)):
            raise ValueError("worst_t and gap must be finite")
        if not self.band > 0:
            raise ValueError(f"band must be positive, got {self.band}")

    @property
    def consistent(self) -> bool:
        return self.status == CONSISTENT


def is_majorized(a, b, tol: float = MAJORIZATION_TOL) -> bool:
    """Whether ``a`` is majorized by ``b``: sorted-descending prefix sums of
    ``a`` never exceed those of ``b`` by more than ``tol``.

    Requires equal lengths and equal totals (within ``tol``); violations of
    those preconditions raise rather than return False.
    """
    if tol < 0:
        raise ValueError(f"tol must be nonnegative, got {tol}")
    av = np.asarray(a, dtype=float).reshape(-1)
    bv = np.asarray(b, dtype=float).reshape(-1)
    if av.size != bv.size or av.size == 0:
        raise ValueError(f"length mismatch: {av.size} vs {bv.size}")
    if not (np.all(np.isfinite(av)) and np.all(np.isfinite(bv))):
        raise ValueError("weight vectors must be finite")
    sa, sb = av.sum(), bv.sum()
    if abs(sa - sb) > tol:
        raise ValueError(f"sums differ beyond tol: {sa!r} vs {sb!r}")
    pa = np.cumsum(np.sort(av)[::-1])
    pb = np.cumsum(np.sort(bv)[::-1])
    return bool(np.all(pa <= pb + tol))


def _survival_gap(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """sup_t [S_x(t) - S_y(t)] over all real t, and a t attaining it.

    Both empirical survival functions are step functions changing only at
    pooled sample values, so the supremum is attained at a pooled value or
    its left limit; both are evaluated via rank counts.
    """
    xs = np.sort(x)
    ys = np.sort(y)
    pool = np.concatenate([xs, ys])
    nx, ny = xs.size, ys.size
    surv_x_right = 1.0 - np.searchsorted(xs, pool, side="right") / nx
    surv_y_right = 1.0 - np.searchsorted(ys, pool, side="right") / ny
    surv_x_left = 1.0 - np.searchsorted(xs, pool, side="left") / nx
    surv_y_left = 1.0 - np.searchsorted(ys, pool, side="left") / ny
    diff = np.maximum(surv_x_right - surv_y_right, surv_x_left - surv_y_left)
    i = int(np.argmax(diff))
    return float(diff[i]), float(pool[i])


def empirical_stochastic_order(x_samples, y_samples,
                               confidence: float = 0.99) -> OrderingVerdict:
    """Test H: X stochastically smaller than Y from two samples.

    The adverse gap sup_t [S_x(t) - S_y(t)] is compared against the
    two-sample DKW band sqrt(ln(2/d)/(2 n_x)) + sqrt(ln(2/d)/(2 n_y)) with
    d = 1 - confidence; the verdict is ``violated`` iff the gap exceeds the
    band. The witnessing threshold and gap are returned either way.
    """
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence}")
    x = np.asarray(x_samples, dtype=float).reshape(-1)
    y = np.asarray(y_samples, dtype=float).reshape(-1)
    if x.size == 0 or y.size == 0:
        raise ValueError("both samples must be nonempty")
    delta = 1.0 - confidence
    band = sqrt(log(2.0 / delta) / (2.0 * x.size)) + \
        sqrt(log(2.0 / delta) / (2.0 * y.size))
    gap, worst_t = _survival_gap(x, y)
    status = VIOLATED if gap > band else CONSISTENT
    return OrderingVerdict(status=status, worst_t=worst_t, gap=gap, band=band)


def _ratio_sample(spec_w: DistributionSpec, spec_q: DistributionSpec,
                  weights: np.ndarray, n: int, seed: int) -> np.ndarray:
    """n independent draws of W / sum(weights_l * Q_l)."""
    m = weights.size
    w = sample_positive(spec_w, n, derive_seed(seed, 0))
    q = sample_positive(spec_q, n * m, derive_seed(seed, 1)).reshape(n, m)
    denom = q @ weights
    if np.any(denom <= 0.0):
        raise ValueError("nonpositive denominator in ratio sample")
    return w / denom


def eaton_olshen_probe(spec_w: DistributionSpec, spec_q: DistributionSpec,
                       a, b, n: int, seed,
                       confidence: float = 0.99) -> OrderingVerdict:
    """Empirically probe the ratio ordering for one majorization pair.

    Draws n independent replicates of W / sum(a_l Q_l) and, from fresh
    streams, n of W / sum(b_l Q_l) (Q i.i.d., a sufficient case of
    exchangeable), then tests the first stochastically smaller than the
    second. When the W-distribution is unimodal at zero the expected verdict
    is ``consistent``.
    """
    seed = check_seed(seed)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    av = np.asarray(a, dtype=float).reshape(-1)
    bv = np.asarray(b, dtype=float).reshape(-1)
    if not is_majorized(av, bv, MAJORIZATION_TOL):
        raise ValueError("a must be majorized by b")
    left = _ratio_sample(spec_w, spec_q, av, n, derive_seed(seed, 10))
    right = _ratio_sample(spec_w, spec_q, bv, n, derive_seed(seed, 11))
    return empirical_stochastic_order(left, right, confidence)


def random_majorization_pair(rng: np.random.Generator, m: int,
                             spread: float = 0.3) -> tuple[np.ndarray, np.ndarray]:
    """A random pair (a, b) with a majorized by b, both summing to 1.

    ``b`` is a normalized vector of heavy-tailed positive draws (small
    ``spread`` shape makes near-one-hot vectors common); ``a`` averages it
    toward the uniform vector, which can only de-concentrate, so a is
    majorized by b by construction.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    raw = rng.gamma(shape=spread, scale=1.0, size=m)
    while raw.sum() == 0.0:
        raw = rng.gamma(shape=spread, scale=1.0, size=m)
    b = raw / raw.sum()
    lam = rng.random()
    a = lam * b + (1.0 - lam) / m
    return a, b


@dataclass(frozen=True)
class CounterexampleRecord:
    """One ordering violation found by the search."""

    alpha: float
    a: tuple[float, ...]
    b: tuple[float, ...]
    gap: float
    worst_t: float
    n: int
    seed: int


def counterexample_search(alpha_grid, pair_budget: int, n: int, seed, *,
                          confidence: float = 0.99,
                          dims=(2, 3, 4)) -> list[CounterexampleRecord]:
    """Scan random majorization pairs for ordering failures.

    For each alpha in ``alpha_grid``, draws ``pair_budget`` random pairs,
    probes the ratio ordering with W a gamma-family variable of that shape
    and Q standard exponential, and records every violated verdict.
    Deterministic given ``seed``. Violations are only expected for shapes
    above 1; running shapes at or below 1 is a null check that should come
    back empty. Either way an empty report is a legitimate outcome: the
    search is best-effort.
    """
    alphas = [float(al) for al in alpha_grid]
    if any(al <= 0.0 for al in alphas):
        raise ValueError("alpha_grid entries must be positive")
    if pair_budget < 1:
        raise ValueError(f"pair_budget must be >= 1, got {pair_budget}")
    seed = check_seed(seed)
    spec_q = DistributionSpec.gamma_shape(1.0, 0.5)
    found: list[CounterexampleRecord] = []
    for ia, alpha in enumerate(alphas):
        spec_w = DistributionSpec.gamma_shape(alpha, 0.5)
        pair_rng = np.random.Generator(np.random.Philox(
            np.random.SeedSequence(entropy=seed, spawn_key=(1000 + ia,))))
        for ip in range(pair_budget):
            m = int(pair_rng.choice(np.asarray(dims)))
            a, b = random_majorization_pair(pair_rng, m)
            probe_seed = derive_seed(seed, ia, ip)
            verdict = eaton_olshen_probe(spec_w, spec_q, a, b, n, probe_seed,
                                         confidence)
            if not verdict.consistent:
                found.append(CounterexampleRecord(
                    alpha=alpha, a=tuple(a), b=tuple(b), gap=verdict.gap,
                    worst_t=verdict.worst_t, n=n, seed=probe_seed))
    return found


def write_counterexample_csv(records, fh: io.TextIOBase) -> None:
    """Emit the search report: alpha,a,b,gap,worst_t,n,seed (a, b ';'-joined)."""
    fh.write("alpha,a,b,gap,worst_t,n,seed\n")
    for r in records:
        a = ";".join(f"{v:.17g}" for v in r.a)
        b = ";".join(f"{v:.17g}" for v in r.b)
        fh.write(f"{r.alpha:.17g},{a},{b},{r.gap:.17g},{r.worst_t:.17g},"
                 f"{r.n},{r.seed}\n")
