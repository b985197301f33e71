"""Tukey halfspace depth of a query point with respect to an empirical sample.

The depth of ``theta`` is the minimum, over all unit directions ``u``, of the
fraction of sample points in the closed halfspace ``{x : u.(x - theta) >= 0}``.
Closed halfspaces are used throughout: points on the boundary count, and a
sample point equal to ``theta`` counts in every halfspace.

Three routes are provided:

* :func:`depth_exact_2d` -- exact O(n log n) angular sweep in the plane;
* :func:`depth_brute` -- exhaustive candidate-direction enumeration in any
  dimension, used as an independent oracle (budget-limited);
* :func:`depth_approx` -- seeded random-direction upper bound for general
  dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from ._validation import as_point_matrix, as_point_vector, check_seed

__all__ = [
    "DepthResult",
    "BudgetExceededError",
    "depth_exact_2d",
    "depth_brute",
    "depth_approx",
]

TWO_PI = 2.0 * np.pi

#: Events closer than this (radians) are processed as one atomic angle group.
DEFAULT_ANGLE_TOL = 1e-12


class BudgetExceededError(RuntimeError):
    """Raised when brute-force enumeration would exceed its evaluation budget."""


@dataclass(frozen=True)
class DepthResult:
    """Halfspace depth as an exact count-over-n rational plus a witness.

    ``count`` is the number of sample points in the minimizing closed
    halfspace, ``n`` the sample size, and ``witness_direction`` a unit vector
    ``u`` whose halfspace attains (or, for the approximate route, upper
    bounds) the minimum.
    """

    count: int
    n: int
    witness_direction: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.count <= self.n:
            raise ValueError(f"count {self.count} outside [0, n={self.n}]")

    @property
    def depth(self) -> Fraction:
        """Exact depth value count/n."""
        return Fraction(self.count, self.n)

    def __float__(self) -> float:
        return self.count / self.n


def _halfspace_counts(diffs: np.ndarray, directions: np.ndarray,
                      angle_tol: float = DEFAULT_ANGLE_TOL) -> np.ndarray:
    """Closed-halfspace point counts for each unit direction.

    A point within ``angle_tol`` radians of the boundary counts as on it
    (threshold -|w| * angle_tol), the same near-tie convention the angular
    sweep applies when grouping events; without it, float rounding can
    exclude both members of an exactly-antipodal pair, undercounting below
    any value a real direction could attain.
    """
    thresholds = -np.linalg.norm(diffs, axis=1) * angle_tol
    return np.count_nonzero(diffs @ directions.T >= thresholds[:, None], axis=0)


def depth_exact_2d(theta, sample, *, angle_tol: float = DEFAULT_ANGLE_TOL) -> DepthResult:
    """Exact planar halfspace depth by angular sweep.

    Sample points are sorted by angle around ``theta``; a directed boundary
    line is swept through all angular gaps between halfspace-count events.
    The count function only changes at event angles and, with closed
    halfspaces, its minimum is attained strictly between events, so
    evaluating once per gap is exact. Events within ``angle_tol`` radians
    are grouped and processed atomically. Runs in O(n log n).
    """
    theta = as_point_vector(theta, dim=2, name="theta")
    pts = as_point_matrix(sample, name="sample")
    if pts.shape[1] != 2:
        raise ValueError(f"depth_exact_2d needs planar input, got d={pts.shape[1]}")
    n = pts.shape[0]

    w = pts - theta
    coincident = (w[:, 0] == 0.0) & (w[:, 1] == 0.0)
    n_co = int(np.count_nonzero(coincident))
    if n_co:
        w = w[~coincident]
    if w.shape[0] == 0:
        return DepthResult(n, n, np.array([1.0, 0.0]))

    alpha = np.arctan2(w[:, 1], w[:, 0])
    # Each point contributes a closed coverage arc [alpha - pi/2, alpha + pi/2]
    # in direction space; depth count at direction angle psi is the number of
    # arcs covering psi (plus coincident points).
    m = len(alpha)
    events = np.mod(np.concatenate([alpha - 0.5 * np.pi, alpha + 0.5 * np.pi]),
                    TWO_PI)
    order = np.argsort(events)
    ev = events[order]
    dv = np.where(order < m, np.int64(1), np.int64(-1))

    # Anchor the sweep inside the widest event-free gap so no group straddles
    # the start of the circle.
    gaps = np.diff(ev)
    wrap_gap = ev[0] + TWO_PI - ev[-1]
    widest = int(np.argmax(gaps)) if gaps.size and gaps.max() > wrap_gap else -1
    if widest >= 0:
        psi_ref = ev[widest] + 0.5 * gaps[widest]
        widest_width = gaps[widest]
    else:
        psi_ref = np.mod(ev[-1] + 0.5 * wrap_gap, TWO_PI)
        widest_width = wrap_gap

    # Sweep order relative to psi_ref is a rotation of the sorted order: the
    # events above psi_ref come first, then the wrapped-around ones.
    pivot = int(np.searchsorted(ev, psi_ref, side="right"))
    rel = np.concatenate([ev[pivot:] - psi_ref, ev[:pivot] + (TWO_PI - psi_ref)])
    dv = np.concatenate([dv[pivot:], dv[:pivot]])

    # Coverage at psi_ref: arc of point i covers psi_ref iff its start event
    # sits in the trailing half-turn, i.e. rel(start_i) >= pi.
    rel_starts = np.mod(alpha - 0.5 * np.pi - psi_ref, TWO_PI)
    cov_ref = int(np.count_nonzero(rel_starts >= np.pi))

    if widest_width <= angle_tol:
        # Degenerate: events are tolerance-dense on the whole circle; every
        # direction is tied, so report the anchor direction's count.
        u = np.array([np.cos(psi_ref), np.sin(psi_ref)])
        return DepthResult(cov_ref + n_co, n, u)

    # Atomic angle groups: split where consecutive events are > angle_tol apart.
    split = np.flatnonzero(np.diff(rel) > angle_tol) + 1
    group_last = np.append(split - 1, len(rel) - 1)
    group_first = np.insert(split, 0, 0)
    cum = np.cumsum(dv)
    cov_after_group = cov_ref + cum[group_last]

    # Candidate values: the anchor gap, then the gap after each group but the
    # last (whose following gap wraps back to the anchor gap).
    candidates = np.concatenate([[cov_ref], cov_after_group[:-1]])
    arg = int(np.argmin(candidates))
    count_min = int(candidates[arg])

    if arg == 0:
        psi_star = psi_ref
    else:
        lo = rel[group_last[arg - 1]]
        hi = rel[group_first[arg]]
        psi_star = psi_ref + 0.5 * (lo + hi)
    u = np.array([np.cos(psi_star), np.sin(psi_star)])
    return DepthResult(count_min + n_co, n, u)


def _rotations_2d(u: np.ndarray, eps: float) -> list[np.ndarray]:
    c, s = np.cos(eps), np.sin(eps)
    rot = np.array([[c, -s], [s, c]])
    return [rot @ u, rot.T @ u]


def _null_direction(rows: np.ndarray) -> np.ndarray | None:
    """Unit normal of the hyperplane through the origin containing ``rows``."""
    d = rows.shape[1]
    if rows.shape[0] != d - 1:
        raise ValueError("need d-1 spanning vectors")
    if d == 2:
        u = np.array([-rows[0, 1], rows[0, 0]])
    elif d == 3:
        u = np.cross(rows[0], rows[1])
    else:
        _, s, vt = np.linalg.svd(rows)
        u = vt[-1]
        if s.size == d - 1 and s[-1] < 1e-12 * max(1.0, s[0]):
            return None
    norm = np.linalg.norm(u)
    if norm < 1e-300 or not np.isfinite(norm):
        return None
    return u / norm


def depth_brute(theta, sample, *, budget: int = 10 ** 8,
                grid_size: int = 64, perturbation: float = 1e-7,
                angle_tol: float = DEFAULT_ANGLE_TOL) -> DepthResult:
    """Brute-force halfspace depth over an exhaustive candidate-direction set.

    Candidates are the normals of hyperplanes through ``theta`` and each
    (d-1)-subset of sample points, both signs, perturbed to both sides of
    each touching configuration, plus coordinate axes and a fixed fallback
    grid (d <= 3). For a finite sample the infimum over directions is
    attained on this set whenever events are separated by more than the
    perturbation angle. Intended as an independent oracle for small inputs;
    raises :class:`BudgetExceededError` when candidate evaluation would need
    more than ``budget`` halfspace checks.
    """
    theta = as_point_vector(theta, name="theta")
    pts = as_point_matrix(sample, name="sample")
    d = pts.shape[1]
    if theta.size != d:
        raise ValueError(f"theta has dim {theta.size}, sample has dim {d}")
    n = pts.shape[0]

    w = pts - theta
    nonzero = ~np.all(w == 0.0, axis=1)
    wn = w[nonzero]
    if wn.shape[0] == 0:
        return DepthResult(n, n, _unit_axis(d))

    if d == 1:
        dirs = [np.array([1.0]), np.array([-1.0])]
    else:
        n_subsets = _n_combinations(wn.shape[0], d - 1)
        per_subset = 2 * (1 + (2 if d == 2 else 2 * d))
        planned = (n_subsets * per_subset + 2 * d + grid_size) * n
        if planned > budget:
            raise BudgetExceededError(
                f"~{planned:.3g} halfspace evaluations exceed budget {budget:.3g}")
        dirs = []
        for subset in combinations(range(wn.shape[0]), d - 1):
            u = _null_direction(wn[list(subset)])
            if u is None:
                continue
            for base in (u, -u):
                dirs.append(base)
                if d == 2:
                    dirs.extend(_rotations_2d(base, perturbation))
                else:
                    for j in range(d):
                        for sign in (1.0, -1.0):
                            v = base.copy()
                            v[j] += sign * perturbation
                            dirs.append(v / np.linalg.norm(v))
        for j in range(d):
            e = np.zeros(d)
            e[j] = 1.0
            dirs.extend([e, -e])
        dirs.extend(_fallback_grid(d, grid_size))

    directions = np.asarray(dirs)
    counts = _halfspace_counts(w, directions, angle_tol)
    arg = int(np.argmin(counts))
    return DepthResult(int(counts[arg]), n, directions[arg])


def _unit_axis(d: int) -> np.ndarray:
    e = np.zeros(d)
    e[0] = 1.0
    return e


def _n_combinations(n: int, r: int) -> int:
    from math import comb

    return comb(n, r)


def _fallback_grid(d: int, grid_size: int) -> list[np.ndarray]:
    if grid_size <= 0:
        return []
    if d == 2:
        ang = np.arange(grid_size) * (TWO_PI / grid_size)
        return list(np.column_stack([np.cos(ang), np.sin(ang)]))
    if d == 3:
        # Fibonacci sphere: deterministic, roughly uniform.
        i = np.arange(grid_size) + 0.5
        z = 1.0 - 2.0 * i / grid_size
        r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
        phi = i * np.pi * (3.0 - np.sqrt(5.0))
        return list(np.column_stack([r * np.cos(phi), r * np.sin(phi), z]))
    return []


def depth_approx(theta, sample, num_directions: int, seed, *,
                 chunk: int = 4096,
                 angle_tol: float = DEFAULT_ANGLE_TOL) -> DepthResult:
    """Upper bound on halfspace depth from seeded random directions.

    Evaluates the closed-halfspace count over ``num_directions`` directions
    drawn uniformly on the unit sphere (Philox stream keyed by ``seed``)
    plus all coordinate axes and their negations, and returns the minimum
    found. The direction sequence is a fixed stream, so for the same seed the
    first m directions of a longer run are a prefix of the shorter run's: the
    returned depth never increases with ``num_directions``.
    """
    theta = as_point_vector(theta, name="theta")
    pts = as_point_matrix(sample, name="sample")
    d = pts.shape[1]
    if theta.size != d:
        raise ValueError(f"theta has dim {theta.size}, sample has dim {d}")
    if num_directions < 1:
        raise ValueError("num_directions must be >= 1")
    seed = check_seed(seed)
    n = pts.shape[0]
    w = pts - theta

    axes = []
    for j in range(d):
        e = np.zeros(d)
        e[j] = 1.0
        axes.extend([e, -e])
    axes = np.asarray(axes)
    counts = _halfspace_counts(w, axes, angle_tol)
    arg = int(np.argmin(counts))
    best_count, best_dir = int(counts[arg]), axes[arg]

    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    # Chunking only batches draws from one sequential stream, so it cannot
    # change the direction sequence; cap the count matrix at ~32 MB.
    chunk = max(1, min(chunk, 4_000_000 // n))
    remaining = num_directions
    while remaining > 0:
        m = min(chunk, remaining)
        z = rng.standard_normal((m, d))
        norms = np.linalg.norm(z, axis=1)
        bad = norms == 0.0
        if np.any(bad):
            z[bad] = _unit_axis(d)
            norms[bad] = 1.0
        u = z / norms[:, None]
        counts = _halfspace_counts(w, u, angle_tol)
        arg = int(np.argmin(counts))
        if int(counts[arg]) < best_count:
            best_count, best_dir = int(counts[arg]), u[arg]
        remaining -= m
    return DepthResult(best_count, n, np.asarray(best_dir))
