"""Experiment runners: maximal-depth curves, location-depth comparisons,
depth-at-barycentre sampling distributions, and a grid validation that the
barycentre maximizes depth.

Every runner is deterministic given its config (work-unit seeds are derived
from the config seed by indexed hashing, so units could run in parallel and
still reproduce the sequential output). CSV and SVG files are written under
``config.output_dir`` when set; all floats are emitted with 17 significant
digits so re-runs are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .depth import BudgetExceededError, depth_approx, depth_exact_2d
from .geometry import embed_simplex
from .maxdepth import max_depth_gamma, max_depth_limit_gamma, max_depth_mc
from .sampling import (
    DistributionSpec,
    derive_seed,
    mean_vector,
    sample_composition,
    sample_uniform_simplex,
)
from .svg import Box, Series, box_chart, line_chart

__all__ = [
    "ExperimentConfig",
    "BoxplotSummary",
    "Fig1Row",
    "Fig1Result",
    "Fig2AlphaResult",
    "Fig2Result",
    "Fig3Cell",
    "Fig3Result",
    "MedianValidation",
    "MedianValidationResult",
    "desk_config",
    "full_config",
    "run_fig1",
    "run_fig2",
    "run_fig3",
    "validate_median",
]

# Stream tags for derived seeds, one per kind of work unit.
_TAG_FIG1, _TAG_FIG2, _TAG_FIG3, _TAG_VALIDATE, _TAG_LOCATIONS = 1, 2, 3, 4, 5


@dataclass(frozen=True)
class ExperimentConfig:
    """Knobs shared by the runners; each runner reads the fields it needs."""

    k: int = 3
    alphas: tuple[float, ...] = (4.0, 1.0, 0.5, 0.25)
    N: int = 200
    n: int = 20_000
    M: int = 20
    seed: int = 0
    k_max: int = 50
    n_values: tuple[int, ...] = (500, 2000, 8000)
    grid_resolution: int = 30
    output_dir: str | None = None

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if min(self.N, self.n, self.M, self.k_max, self.grid_resolution) < 1:
            raise ValueError("all counts must be >= 1")
        if not self.alphas or any(a <= 0 for a in self.alphas):
            raise ValueError("alphas must be positive and nonempty")
        if not self.n_values or any(v < 1 for v in self.n_values):
            raise ValueError("n_values must be positive and nonempty")

    def out_path(self, name: str) -> Path | None:
        if self.output_dir is None:
            return None
        out = Path(self.output_dir)
        out.mkdir(parents=True, exist_ok=True)
        return out / name


def desk_config(kind: str, *, seed: int, output_dir: str | None = None,
                **overrides) -> ExperimentConfig:
    """Laptop-scale defaults: minutes, not hours."""
    base = {
        "fig1": dict(k_max=50, n=1_000_000, alphas=(0.25, 0.5, 1.0, 4.0)),
        "fig2": dict(N=200, n=20_000, M=20, alphas=(4.0, 1.0, 0.5, 0.25)),
        "fig3": dict(M=200, n_values=(500, 2000, 8000),
                     alphas=(4.0, 1.0, 0.5, 0.25)),
        "validate": dict(n=50_000, grid_resolution=30, alphas=(1.0,)),
    }
    if kind not in base:
        raise ValueError(f"unknown experiment kind {kind!r}")
    params = dict(base[kind])
    params.update(overrides)
    return ExperimentConfig(seed=seed, output_dir=output_dir, **params)


def full_config(kind: str, *, seed: int, output_dir: str | None = None,
                **overrides) -> ExperimentConfig:
    """Publication-scale runs (slow): 1000 locations, 100k-point samples,
    up to 1000 replicates. The CLI exposes this as ``--scale paper``."""
    cfg = desk_config(kind, seed=seed, output_dir=output_dir)
    scale = {
        "fig1": dict(),
        "fig2": dict(N=1000, n=100_000, M=100),
        "fig3": dict(M=1000),
        "validate": dict(n=100_000),
    }
    params = dict(scale[kind])
    params.update(overrides)
    return replace(cfg, **params) if params else cfg


@dataclass(frozen=True)
class BoxplotSummary:
    """Five-number summary plus mean and count."""

    min: float
    q1: float
    median: float
    q3: float
    max: float
    mean: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if not (self.min <= self.q1 <= self.median <= self.q3 <= self.max):
            raise ValueError("quartiles out of order")

    @classmethod
    def from_values(cls, values) -> "BoxplotSummary":
        v = np.asarray(values, dtype=float).reshape(-1)
        if v.size == 0:
            raise ValueError("need at least one value")
        q1, med, q3 = np.percentile(v, [25, 50, 75])
        return cls(min=float(v.min()), q1=float(q1), median=float(med),
                   q3=float(q3), max=float(v.max()), mean=float(v.mean()),
                   count=int(v.size))

    @property
    def iqr(self) -> float:
        return self.q3 - self.q1


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _write_text(path: Path | None, text: str) -> None:
    if path is not None:
        path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# Maximal-depth curves (closed form vs Monte Carlo vs limit)

@dataclass(frozen=True)
class Fig1Row:
    k: int
    alpha: float
    h_closed: float
    h_mc: float
    h_mc_se: float
    h_limit: float


@dataclass(frozen=True)
class Fig1Result:
    rows: tuple[Fig1Row, ...]
    config: ExperimentConfig = field(repr=False)

    def rows_for(self, alpha: float) -> list[Fig1Row]:
        return [r for r in self.rows if r.alpha == alpha]


def run_fig1(config: ExperimentConfig) -> Fig1Result:
    """Maximal depth as a function of k, one curve per alpha.

    For each k = 2..k_max and each alpha: the closed form, a Monte Carlo
    estimate of the same tail probability at config.n compositions, and the
    large-k limit. Writes fig1.csv / fig1.svg when an output dir is set.
    """
    if config.k_max < 2:
        raise ValueError("k_max must be >= 2")
    rows = []
    for ia, alpha in enumerate(config.alphas):
        limit = max_depth_limit_gamma(alpha).value
        spec = DistributionSpec.gamma_shape(alpha)
        for k in range(2, config.k_max + 1):
            closed = max_depth_gamma(k, alpha).value
            mc = max_depth_mc(k, spec, config.n,
                              derive_seed(config.seed, _TAG_FIG1, ia, k))
            rows.append(Fig1Row(k=k, alpha=alpha, h_closed=closed,
                                h_mc=mc.value, h_mc_se=mc.std_error,
                                h_limit=limit))
    result = Fig1Result(rows=tuple(rows), config=config)

    lines = ["k,alpha,h_closed,h_mc,h_mc_se,h_limit"]
    for r in rows:
        lines.append(f"{r.k},{_fmt(r.alpha)},{_fmt(r.h_closed)},{_fmt(r.h_mc)},"
                     f"{_fmt(r.h_mc_se)},{_fmt(r.h_limit)}")
    _write_text(config.out_path("fig1.csv"), "\n".join(lines) + "\n")

    series = []
    hlines = []
    for alpha in config.alphas:
        sub = result.rows_for(alpha)
        series.append(Series(label=f"alpha={alpha:g}",
                             x=tuple(r.k for r in sub),
                             y=tuple(r.h_closed for r in sub)))
        hlines.append((f"limit {alpha:g}", sub[0].h_limit))
    _write_text(config.out_path("fig1.svg"),
                line_chart(series, title="Maximal depth by dimension",
                           xlabel="k", ylabel="depth", hlines=hlines))
    return result


# ---------------------------------------------------------------------------
# Depths of random locations vs the barycentre

@dataclass(frozen=True)
class Fig2AlphaResult:
    alpha: float
    avg_depths: np.ndarray = field(repr=False)   # (N,) averaged over M
    mu_avg_depth: float = field(repr=True)
    mu_depths: np.ndarray = field(repr=False)    # (M,) per-replicate values
    diff_mean: np.ndarray = field(repr=False)    # (N,) mu minus location
    diff_se: np.ndarray = field(repr=False)      # (N,) paired std error
    summary: BoxplotSummary = field(repr=True)

    @property
    def mu_depth_se(self) -> float:
        """Monte Carlo std error of the averaged barycentre depth."""
        if self.mu_depths.size < 2:
            return 0.0
        return float(self.mu_depths.std(ddof=1) / math.sqrt(self.mu_depths.size))

    @property
    def min_margin(self) -> float:
        """min over locations of (mu - location) average depth difference."""
        return float(np.min(self.diff_mean))

    def dominates_within(self, z: float = 2.0) -> bool:
        """Whether the barycentre beats every location up to z paired s.e."""
        return bool(np.all(self.diff_mean >= -z * self.diff_se))


@dataclass(frozen=True)
class Fig2Result:
    locations: np.ndarray = field(repr=False)
    per_alpha: tuple[Fig2AlphaResult, ...]
    config: ExperimentConfig = field(repr=False)


def _make_depth_counter(method: str, num_directions: int, seed: int):
    """Per-query closed-halfspace count, exact sweep or seeded approximation."""
    if method == "exact":
        def count(q, sample_emb):
            return depth_exact_2d(q, sample_emb).count
    elif method == "approx":
        def count(q, sample_emb):
            return depth_approx(q, sample_emb, num_directions, seed).count
    else:
        raise ValueError(f"unknown depth method {method!r}")
    return count


def _depth_counts_at(queries_emb: np.ndarray, sample_emb: np.ndarray,
                     counter=None) -> np.ndarray:
    if counter is None:
        counter = _make_depth_counter("exact", 0, 0)
    return np.fromiter(
        (counter(q, sample_emb) for q in queries_emb),
        dtype=np.int64, count=len(queries_emb))


def _check_planar_or_approx(config: ExperimentConfig, depth_method: str,
                            runner: str) -> None:
    if config.k != 3 and depth_method != "approx":
        raise ValueError(
            f"{runner} uses the exact planar sweep, which needs k=3; "
            f"got k={config.k}. Pass depth_method='approx' to override.")


def run_fig2(config: ExperimentConfig, *, depth_method: str = "exact",
             num_directions: int = 2000) -> Fig2Result:
    """Depths of N uniform random locations vs the barycentre, per alpha.

    Locations are drawn once and shared across alphas. For each alpha, depths
    of all locations and of the barycentre are computed against M independent
    samples of size n and averaged over the replicates. Depths use the exact
    planar sweep (k=3); ``depth_method="approx"`` unlocks other k at the cost
    of upper-bound depths.
    """
    _check_planar_or_approx(config, depth_method, "run_fig2")
    counter = _make_depth_counter(depth_method, num_directions,
                                  derive_seed(config.seed, _TAG_FIG2, 97))
    k = config.k
    mu = mean_vector(k)
    locations = sample_uniform_simplex(
        k, config.N, derive_seed(config.seed, _TAG_LOCATIONS)).points
    queries = np.vstack([locations, mu])
    queries_emb = embed_simplex(queries)

    per_alpha = []
    for ia, alpha in enumerate(config.alphas):
        spec = DistributionSpec.gamma_shape(alpha)
        counts = np.empty((config.M, config.N + 1), dtype=np.int64)
        for rep in range(config.M):
            sample = sample_composition(
                k, spec, config.n, derive_seed(config.seed, _TAG_FIG2, ia, rep))
            sample_emb = embed_simplex(sample.points)
            counts[rep] = _depth_counts_at(queries_emb, sample_emb, counter)
        depths = counts / config.n
        avg = depths.mean(axis=0)
        diffs = depths[:, -1:] - depths[:, :-1]        # (M, N) paired
        diff_mean = diffs.mean(axis=0)
        if config.M > 1:
            diff_se = diffs.std(axis=0, ddof=1) / math.sqrt(config.M)
        else:
            diff_se = np.zeros(config.N)
        per_alpha.append(Fig2AlphaResult(
            alpha=alpha, avg_depths=avg[:-1], mu_avg_depth=float(avg[-1]),
            mu_depths=depths[:, -1], diff_mean=diff_mean, diff_se=diff_se,
            summary=BoxplotSummary.from_values(avg[:-1])))
    result = Fig2Result(locations=locations, per_alpha=tuple(per_alpha),
                        config=config)

    theta_cols = ",".join(f"theta_{j + 1}" for j in range(k))
    lines = [f"alpha,location_id,{theta_cols},avg_depth"]
    for res in per_alpha:
        for i in range(config.N):
            t = ",".join(_fmt(v) for v in locations[i])
            lines.append(f"{_fmt(res.alpha)},{i},{t},{_fmt(res.avg_depths[i])}")
        t = ",".join(_fmt(v) for v in mu)
        lines.append(f"{_fmt(res.alpha)},mu,{t},{_fmt(res.mu_avg_depth)}")
    _write_text(config.out_path("fig2.csv"), "\n".join(lines) + "\n")

    boxes = [Box(label=f"a={r.alpha:g}", low=r.summary.min, q1=r.summary.q1,
                 median=r.summary.median, q3=r.summary.q3, high=r.summary.max)
             for r in per_alpha]
    markers = [(i, r.mu_avg_depth, "mu") for i, r in enumerate(per_alpha)]
    _write_text(config.out_path("fig2.svg"),
                box_chart(boxes, title="Random-location depths vs barycentre",
                          xlabel="alpha", ylabel="average depth",
                          markers=markers))
    return result


# ---------------------------------------------------------------------------
# Sampling distribution of the barycentre depth

@dataclass(frozen=True)
class Fig3Cell:
    alpha: float
    n: int
    depths: np.ndarray = field(repr=False)
    summary: BoxplotSummary = field(repr=True)
    h_reference: float = field(repr=True)
    asserted: bool = field(repr=True)


@dataclass(frozen=True)
class Fig3Result:
    cells: tuple[Fig3Cell, ...]
    config: ExperimentConfig = field(repr=False)

    def cell(self, alpha: float, n: int) -> Fig3Cell:
        for c in self.cells:
            if c.alpha == alpha and c.n == n:
                return c
        raise KeyError((alpha, n))


def run_fig3(config: ExperimentConfig, *, depth_method: str = "exact",
             num_directions: int = 2000) -> Fig3Result:
    """M independent barycentre depths per (alpha, n), with the closed-form
    value overlaid.

    For shapes above 1 the closed form is reported for comparison only
    (``asserted=False``): it is the same tail probability, but its
    maximal-depth status is only proved for shapes at most 1.
    """
    _check_planar_or_approx(config, depth_method, "run_fig3")
    counter = _make_depth_counter(depth_method, num_directions,
                                  derive_seed(config.seed, _TAG_FIG3, 97))
    k = config.k
    mu_emb = embed_simplex(mean_vector(k).reshape(1, -1))[0]
    cells = []
    for ia, alpha in enumerate(config.alphas):
        spec = DistributionSpec.gamma_shape(alpha)
        h_ref = max_depth_gamma(k, alpha).value
        for jn, n in enumerate(config.n_values):
            depths = np.empty(config.M)
            for rep in range(config.M):
                sample = sample_composition(
                    k, spec, n,
                    derive_seed(config.seed, _TAG_FIG3, ia, jn, rep))
                sample_emb = embed_simplex(sample.points)
                depths[rep] = counter(mu_emb, sample_emb) / n
            cells.append(Fig3Cell(alpha=alpha, n=n, depths=depths,
                                  summary=BoxplotSummary.from_values(depths),
                                  h_reference=h_ref,
                                  asserted=spec.unimodal_at_zero))
    result = Fig3Result(cells=tuple(cells), config=config)

    lines = ["alpha,n,replicate,depth"]
    for c in cells:
        for rep, d in enumerate(c.depths):
            lines.append(f"{_fmt(c.alpha)},{c.n},{rep},{_fmt(d)}")
    _write_text(config.out_path("fig3.csv"), "\n".join(lines) + "\n")

    boxes = []
    hlines = []
    for i, c in enumerate(cells):
        boxes.append(Box(label=f"a={c.alpha:g},n={c.n}", low=c.summary.min,
                         q1=c.summary.q1, median=c.summary.median,
                         q3=c.summary.q3, high=c.summary.max))
        hlines.append((i, c.h_reference))
    _write_text(config.out_path("fig3.svg"),
                box_chart(boxes, title="Barycentre depth by sample size",
                          xlabel="alpha, n", ylabel="depth", hlines=hlines))
    return result


# ---------------------------------------------------------------------------
# Grid validation that the barycentre maximizes depth

@dataclass(frozen=True)
class MedianValidation:
    alpha: float
    argmax_point: np.ndarray = field(repr=False)
    argmax_depth: float
    mu_depth: float
    gap: float
    threshold: float
    passed: bool
    mu_on_lattice: bool
    nearest_lattice_point: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MedianValidationResult:
    reports: tuple[MedianValidation, ...]
    config: ExperimentConfig = field(repr=False)


def simplex_lattice(resolution: int) -> np.ndarray:
    """All points (i, j, r-i-j)/r on the 3-simplex, i + j <= r."""
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    r = resolution
    pts = [(i, j, r - i - j) for i in range(r + 1) for j in range(r + 1 - i)]
    return np.asarray(pts, dtype=float) / r


def validate_median(config: ExperimentConfig, *,
                      budget: float = 5e9) -> MedianValidationResult:
    """Exact depth of every lattice point against one large sample, per alpha.

    Reports the lattice argmax and its depth gap to the barycentre. The check
    passes when the gap is at most 2/sqrt(n) (Monte Carlo slack) plus 2/r
    (how much depth can change across one lattice cell). Refuses grids whose
    total sweep work (lattice points x n x alphas) exceeds ``budget``.
    """
    if config.k != 3:
        raise ValueError("validate_median runs on the 3-simplex")
    r = config.grid_resolution
    if r < 2:
        raise ValueError("grid_resolution must be >= 2")
    n_lattice = (r + 1) * (r + 2) // 2
    work = float(n_lattice) * config.n * len(config.alphas)
    if work > budget:
        raise BudgetExceededError(
            f"~{work:.3g} point evaluations exceed budget {budget:.3g}; "
            "reduce grid_resolution or n")
    lattice = simplex_lattice(r)
    mu = mean_vector(3)
    mu_on_lattice = r % 3 == 0
    nearest = lattice[np.argmin(np.abs(lattice - mu).sum(axis=1))]
    lattice_emb = embed_simplex(lattice)
    mu_emb = embed_simplex(mu.reshape(1, -1))[0]
    threshold = 2.0 / math.sqrt(config.n) + 2.0 / r

    reports = []
    for ia, alpha in enumerate(config.alphas):
        spec = DistributionSpec.gamma_shape(alpha)
        sample = sample_composition(
            3, spec, config.n, derive_seed(config.seed, _TAG_VALIDATE, ia))
        sample_emb = embed_simplex(sample.points)
        counts = _depth_counts_at(lattice_emb, sample_emb)
        mu_count = depth_exact_2d(mu_emb, sample_emb).count
        arg = int(np.argmax(counts))
        gap = (int(counts[arg]) - int(mu_count)) / config.n
        reports.append(MedianValidation(
            alpha=alpha, argmax_point=lattice[arg],
            argmax_depth=int(counts[arg]) / config.n,
            mu_depth=int(mu_count) / config.n, gap=gap, threshold=threshold,
            passed=gap <= threshold, mu_on_lattice=mu_on_lattice,
            nearest_lattice_point=nearest))

    result = MedianValidationResult(reports=tuple(reports), config=config)
    lines = ["alpha,argmax_1,argmax_2,argmax_3,argmax_depth,mu_depth,gap,"
             "threshold,passed,mu_on_lattice"]
    for rep in reports:
        t = ",".join(_fmt(v) for v in rep.argmax_point)
        lines.append(f"{_fmt(rep.alpha)},{t},{_fmt(rep.argmax_depth)},"
                     f"{_fmt(rep.mu_depth)},{_fmt(rep.gap)},"
                     f"{_fmt(rep.threshold)},{int(rep.passed)},"
                     f"{int(rep.mu_on_lattice)}")
    _write_text(config.out_path("validate_median.csv"), "\n".join(lines) + "\n")
    return result
