"""Samplers for the normalized-i.i.d. compositional model.

A composition is built from k mutually independent positive draws with a
common distribution F, divided by their sum. With F = Gamma(alpha, rate) this
is the symmetric Dirichlet(alpha, ..., alpha) law; the rate cancels in the
normalization, and the default rate is 1/2.

Randomness comes from numpy's Philox counter-based generator. Draws are
produced in fixed blocks of :data:`BLOCK_SIZE`; block b uses the stream keyed
by ``SeedSequence(seed, spawn_key=(b,))``, so any block can be regenerated
independently (and in parallel) while reproducing the sequential output
bit for bit.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from ._validation import as_composition_matrix, check_seed

__all__ = [
    "DistributionSpec",
    "EmpiricalSample",
    "BLOCK_SIZE",
    "sample_positive",
    "sample_composition",
    "sample_uniform_simplex",
    "mean_vector",
    "derive_seed",
]

#: Draws per generator block. Fixed so parallel and sequential generation agree.
BLOCK_SIZE = 1 << 16

#: Redraw attempts per block before giving up on producing positive draws.
_MAX_REDRAWS = 100

GAMMA_FAMILY = "gamma_shape"
TABLE_FAMILY = "inverse_cdf_table"


@dataclass(frozen=True)
class DistributionSpec:
    """Distribution of the positive i.i.d. draws feeding the normalization.

    Two families are supported: ``gamma_shape`` (shape ``alpha``, rate
    ``rate``) and ``inverse_cdf_table`` (monotone linear interpolation of a
    tabulated quantile function). ``unimodal_at_zero`` reports whether the
    distribution has a non-increasing density on (0, inf) -- the class for
    which the maximal-depth results are proved; for the gamma family this is
    exactly ``alpha <= 1``.
    """

    family: str
    alpha: float | None = None
    rate: float | None = None
    probs: tuple[float, ...] | None = None
    quantiles: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.family == GAMMA_FAMILY:
            if self.alpha is None or not self.alpha > 0:
                raise ValueError(f"gamma_shape needs alpha > 0, got {self.alpha!r}")
            if self.rate is None or not self.rate > 0:
                raise ValueError(f"gamma_shape needs rate > 0, got {self.rate!r}")
        elif self.family == TABLE_FAMILY:
            if self.probs is None or self.quantiles is None:
                raise ValueError("inverse_cdf_table needs probs and quantiles")
            p = np.asarray(self.probs, dtype=float)
            q = np.asarray(self.quantiles, dtype=float)
            if p.ndim != 1 or p.size < 2 or p.shape != q.shape:
                raise ValueError("probs and quantiles must be 1-d, equal length >= 2")
            if np.any(p <= 0) or np.any(p >= 1) or np.any(np.diff(p) <= 0):
                raise ValueError("probs must be strictly increasing within (0, 1)")
            if np.any(q < 0) or np.any(np.diff(q) < 0):
                raise ValueError("quantiles must be nonnegative and nondecreasing")
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def gamma_shape(cls, alpha: float, rate: float = 0.5) -> "DistributionSpec":
        return cls(family=GAMMA_FAMILY, alpha=float(alpha), rate=float(rate))

    @classmethod
    def inverse_cdf_table(cls, probs, quantiles) -> "DistributionSpec":
        return cls(family=TABLE_FAMILY,
                   probs=tuple(float(p) for p in probs),
                   quantiles=tuple(float(q) for q in quantiles))

    @property
    def unimodal_at_zero(self) -> bool:
        if self.family == GAMMA_FAMILY:
            return self.alpha <= 1.0
        # Table family: the cdf is concave iff the interpolated quantile
        # function is convex, i.e. its slopes are nondecreasing.
        p = np.asarray(self.probs)
        q = np.asarray(self.quantiles)
        slopes = np.diff(q) / np.diff(p)
        return bool(np.all(np.diff(slopes) >= -1e-12))

    def label(self) -> str:
        if self.family == GAMMA_FAMILY:
            return f"gamma_shape(alpha={self.alpha:g}, rate={self.rate:g})"
        return f"inverse_cdf_table({len(self.probs)} knots)"


@dataclass(frozen=True)
class EmpiricalSample:
    """An ordered collection of compositions with sampling provenance."""

    points: np.ndarray = field(repr=False)
    spec: DistributionSpec
    seed: int
    k: int
    tag: str | None = None

    def __post_init__(self):
        pts = as_composition_matrix(self.points, k=self.k, name="sample points")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def to_csv(self, path) -> None:
        """Write one row per point, k columns, 17 significant digits, with a
        comment header recording spec, seed and size."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            self.write_csv(fh)

    def write_csv(self, fh: io.TextIOBase) -> None:
        tag = f" tag={self.tag}" if self.tag else ""
        fh.write(f"# spec={self.spec.label()} k={self.k} n={self.n} "
                 f"seed={self.seed}{tag}\n")
        for row in self.points:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _block_seed_sequences(seed: int, first_block: int, n_blocks: int):
    for b in range(first_block, first_block + n_blocks):
        yield np.random.SeedSequence(entropy=seed, spawn_key=(b,))


def _draw_block(spec: DistributionSpec, size: int,
                rng: np.random.Generator) -> np.ndarray:
    """One block of strictly positive i.i.d. draws from ``spec``.

    Exact-zero draws (possible by underflow for small gamma shapes, or from a
    table whose lowest quantiles are 0) are rejected and redrawn from the same
    stream, keeping the output deterministic.
    """
    if spec.family == GAMMA_FAMILY:
        def draw(m):
            return rng.gamma(shape=spec.alpha, scale=1.0 / spec.rate, size=m)
    else:
        p = np.asarray(spec.probs)
        q = np.asarray(spec.quantiles)

        def draw(m):
            return np.interp(rng.random(m), p, q)

    out = draw(size)
    for _ in range(_MAX_REDRAWS):
        zero = np.flatnonzero(out == 0.0)
        if zero.size == 0:
            return out
        out[zero] = draw(zero.size)
    raise RuntimeError(
        f"could not draw positive values from {spec.label()} "
        f"after {_MAX_REDRAWS} redraw rounds")


def iter_positive_blocks(spec: DistributionSpec, n: int,
                         seed: int) -> Iterator[np.ndarray]:
    """Yield the draw blocks of :func:`sample_positive` in order."""
    seed = check_seed(seed)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    remaining = n
    for ss in _block_seed_sequences(seed, 0, -(-n // BLOCK_SIZE)):
        size = min(BLOCK_SIZE, remaining)
        rng = np.random.Generator(np.random.Philox(ss))
        yield _draw_block(spec, size, rng)
        remaining -= size


def sample_positive(spec: DistributionSpec, n: int, seed) -> np.ndarray:
    """n i.i.d. strictly positive draws from ``spec``, deterministic given seed."""
    return np.concatenate(list(iter_positive_blocks(spec, n, seed)))


def sample_composition(k: int, spec: DistributionSpec, n: int, seed,
                       tag: str | None = None) -> EmpiricalSample:
    """n compositions of dimension k: i.i.d. positives normalized by their sum.

    Point i uses draws ik..(i+1)k-1 of :func:`sample_positive` with the same
    seed.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    v = sample_positive(spec, n * k, seed).reshape(n, k)
    points = v / v.sum(axis=1, keepdims=True)
    return EmpiricalSample(points=points, spec=spec, seed=check_seed(seed),
                           k=k, tag=tag)


def sample_uniform_simplex(k: int, n: int, seed) -> EmpiricalSample:
    """Uniform draws on the k-simplex: the normalized-exponential special case."""
    return sample_composition(k, DistributionSpec.gamma_shape(1.0, 0.5), n,
                              seed, tag="uniform")


def mean_vector(k: int) -> np.ndarray:
    """The barycentre (1/k, ..., 1/k), the mean of every normalized model."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return np.full(k, 1.0 / k)


def derive_seed(seed, *path: int) -> int:
    """Derive an independent 64-bit child seed from ``seed`` and an index path.

    Hash-based (SeedSequence), so distinct paths give independent streams and
    the derivation is stable across runs and platforms.
    """
    seed = check_seed(seed)
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(p) for p in path))
    state = ss.generate_state(2, dtype=np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def first_coordinate_tail_count(k: int, spec: DistributionSpec, n: int, seed,
                                threshold: float) -> int:
    """#{i : composition_i[0] >= threshold} without holding all n points.

    Streams over the same draw blocks as :func:`sample_composition`, so the
    count matches exactly what the materialized sample would give.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    count = 0
    carry = np.empty(0)
    for block in iter_positive_blocks(spec, n * k, seed):
        buf = np.concatenate([carry, block]) if carry.size else block
        n_pts = buf.size // k
        if n_pts:
            v = buf[: n_pts * k].reshape(n_pts, k)
            # Same arithmetic as sample_composition (normalize, then compare),
            # so the streamed count equals the materialized one bit for bit.
            first = v[:, 0] / v.sum(axis=1)
            count += int(np.count_nonzero(first >= threshold))
        carry = buf[n_pts * k:]
    if carry.size:
        raise AssertionError("draw blocks did not cover n*k values")
    return count


def load_points_csv(path) -> np.ndarray:
    """Read a headerless CSV of points (one row each); '#' lines are comments."""
    arr = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if arr.size == 0:
        raise ValueError(f"no data rows in {path}")
    return arr
