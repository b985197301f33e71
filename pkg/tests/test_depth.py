from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from simplexdepth.depth import (
    BudgetExceededError,
    depth_approx,
    depth_brute,
    depth_exact_2d,
)
from simplexdepth.geometry import embed_simplex

SQUARE = np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])
TRIANGLE = np.array([[1.0, 0.0],
                     [-0.5, np.sqrt(3) / 2],
                     [-0.5, -np.sqrt(3) / 2]])


def random_instance(rng, max_n=50):
    n = int(rng.integers(1, max_n + 1))
    pts = rng.normal(size=(n, 2))
    if rng.random() < 0.3:
        theta = pts[int(rng.integers(0, n))].copy()
    else:
        theta = rng.normal(size=2)
    return theta, pts


class TestExact2d:
    def test_theta_equal_to_single_point(self):
        assert depth_exact_2d([3.0, -1.0], [[3.0, -1.0]]).depth == 1

    def test_square_center(self):
        res = depth_exact_2d([0.0, 0.0], SQUARE)
        assert res.depth == Fraction(1, 2)

    def test_outside_hull_is_zero(self):
        assert depth_exact_2d([5.0, 5.0], SQUARE).depth == 0

    def test_triangle_centroid(self):
        assert depth_exact_2d([0.0, 0.0], TRIANGLE).depth == Fraction(1, 3)

    def test_witness_attains_count(self):
        rng = np.random.default_rng(31)
        for _ in range(80):
            theta, pts = random_instance(rng)
            res = depth_exact_2d(theta, pts)
            attained = int(np.count_nonzero(
                (pts - theta) @ res.witness_direction >= 0))
            assert attained == res.count

    def test_rigid_motion_invariance(self):
        rng = np.random.default_rng(32)
        for _ in range(40):
            theta, pts = random_instance(rng)
            base = depth_exact_2d(theta, pts).depth
            phi = rng.uniform(0, 2 * np.pi)
            rot = np.array([[np.cos(phi), -np.sin(phi)],
                            [np.sin(phi), np.cos(phi)]])
            shift = rng.normal(size=2) * 5
            # transform theta and sample through the same kernel so exact
            # coincidences survive the float rounding of the motion
            moved = np.vstack([theta.reshape(1, -1), pts]) @ rot.T + shift
            assert depth_exact_2d(moved[0], moved[1:]).depth == base

    def test_coincident_points_always_counted(self):
        pts = np.vstack([SQUARE, [[0.0, 0.0]] * 3])
        res = depth_exact_2d([0.0, 0.0], pts)
        assert res.depth == Fraction(2 + 3, 7)

    def test_exactly_antipodal_pair(self):
        # start/end events coincide exactly; the tie must merge atomically
        res = depth_exact_2d([0.0, 0.0], [[1.0, 0.0], [-1.0, 0.0]])
        assert res.depth == Fraction(1, 2)
        assert depth_brute([0.0, 0.0], [[1.0, 0.0], [-1.0, 0.0]]).depth == \
            Fraction(1, 2)

    def test_collinear_stacked_points(self):
        pts = np.array([[2.0, 0.0], [3.0, 0.0], [-1.0, 0.0], [0.0, 5.0]])
        assert depth_exact_2d([0.0, 0.0], pts).depth == \
            depth_brute([0.0, 0.0], pts).depth

    def test_depth_at_sample_point_at_least_1_over_n(self):
        rng = np.random.default_rng(33)
        for _ in range(30):
            pts = rng.normal(size=(int(rng.integers(1, 40)), 2))
            theta = pts[int(rng.integers(0, len(pts)))]
            assert depth_exact_2d(theta, pts).depth >= Fraction(1, len(pts))

    def test_rejects_non_planar(self):
        with pytest.raises(ValueError):
            depth_exact_2d([0.0, 0.0, 0.0], np.zeros((3, 3)))
        with pytest.raises(ValueError):
            depth_exact_2d([0.0, 0.0], np.empty((0, 2)))


class TestBrute:
    def test_univariate_median_of_five(self):
        res = depth_brute([3.0], [[1.0], [2.0], [3.0], [4.0], [5.0]])
        assert res.depth == Fraction(3, 5)

    def test_univariate_tail(self):
        assert depth_brute([5.0], [[1.0], [2.0], [3.0], [4.0], [5.0]]).depth \
            == Fraction(1, 5)

    def test_triangle_centroid(self):
        assert depth_brute([0.0, 0.0], TRIANGLE).depth == Fraction(1, 3)

    def test_degenerate_all_points_equal_theta(self):
        res = depth_brute([1.0, 2.0], [[1.0, 2.0]] * 4)
        assert res.depth == 1

    def test_budget_refusal(self):
        pts = np.random.default_rng(0).normal(size=(60, 3))
        with pytest.raises(BudgetExceededError):
            depth_brute(np.zeros(3), pts, budget=1000)

    def test_3d_tetrahedron_centroid(self):
        pts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], dtype=float)
        res = depth_brute(pts.mean(axis=0), pts)
        assert res.depth == Fraction(1, 4)


class TestCrossOracles:
    def test_exact_matches_brute_on_random_instances(self):
        rng = np.random.default_rng(2024)
        for _ in range(60):
            theta, pts = random_instance(rng)
            assert depth_exact_2d(theta, pts).depth == \
                depth_brute(theta, pts).depth

    def test_approx_upper_bounds_exact(self):
        rng = np.random.default_rng(5)
        for _ in range(40):
            theta, pts = random_instance(rng)
            approx = depth_approx(theta, pts, 64, 99)
            assert approx.depth >= depth_exact_2d(theta, pts).depth

    def test_approx_close_with_many_directions(self):
        rng = np.random.default_rng(6)
        for _ in range(10):
            pts = rng.normal(size=(100, 2))
            theta = rng.normal(size=2) * 0.3
            exact = depth_exact_2d(theta, pts).depth
            approx = depth_approx(theta, pts, 4000, 7).depth
            assert exact <= approx <= exact + Fraction(1, 100)


class TestApprox:
    def test_outside_hull_finds_separator(self):
        assert depth_approx([9.0, 9.0], SQUARE, 200, 3).depth == 0

    def test_monotone_in_directions_prefix(self):
        rng = np.random.default_rng(8)
        for seed in (0, 1, 2):
            pts = rng.normal(size=(60, 2))
            theta = rng.normal(size=2) * 0.2
            d_few = depth_approx(theta, pts, 100, seed).depth
            d_many = depth_approx(theta, pts, 1000, seed).depth
            assert d_many <= d_few

    def test_deterministic_given_seed(self):
        pts = np.random.default_rng(9).normal(size=(50, 3))
        a = depth_approx(np.zeros(3), pts, 500, 12345)
        b = depth_approx(np.zeros(3), pts, 500, 12345)
        assert a.count == b.count
        np.testing.assert_array_equal(a.witness_direction, b.witness_direction)

    def test_rejects_zero_directions(self):
        with pytest.raises(ValueError):
            depth_approx([0.0, 0.0], SQUARE, 0, 1)


class TestStructuredConfigurations:
    def test_regular_polygon_centres_match_brute(self):
        for m in (3, 4, 5, 6, 7, 12):
            ang = np.arange(m) * (2 * np.pi / m)
            pts = np.column_stack([np.cos(ang), np.sin(ang)])
            exact = depth_exact_2d([0.0, 0.0], pts)
            brute = depth_brute([0.0, 0.0], pts)
            assert exact.depth == brute.depth, m
            # a closed halfplane through the centre holds at least half the
            # vertices minus the boundary ones on the far side
            assert exact.depth >= Fraction(m // 2, m)

    def test_clustered_duplicates_match_brute(self):
        rng = np.random.default_rng(55)
        for _ in range(50):
            base = rng.normal(size=(int(rng.integers(2, 8)), 2))
            reps = rng.integers(1, 4, size=len(base))
            pts = np.repeat(base, reps, axis=0)
            theta = base[0] if rng.random() < 0.5 else rng.normal(size=2)
            assert depth_exact_2d(theta, pts).depth == \
                depth_brute(theta, pts).depth


coordinate = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False,
                       width=64)


@given(arrays(np.float64, st.tuples(st.integers(1, 12), st.just(2)),
              elements=coordinate),
       st.tuples(coordinate, coordinate))
@settings(max_examples=80, deadline=None)
def test_sweep_properties_hold_on_arbitrary_clouds(pts, theta):
    theta = np.asarray(theta)
    res = depth_exact_2d(theta, pts)
    assert 0 <= res.depth <= 1
    attained = int(np.count_nonzero((pts - theta) @ res.witness_direction >= 0))
    assert attained == res.count
    assert res.depth == depth_brute(theta, pts).depth


def test_embedding_permutation_invariance_k3():
    rng = np.random.default_rng(77)
    raw = rng.gamma(1.0, 1.0, size=(80, 3))
    pts = raw / raw.sum(axis=1, keepdims=True)
    theta = np.array([0.2, 0.5, 0.3])
    base = depth_exact_2d(embed_simplex(theta.reshape(1, -1))[0],
                          embed_simplex(pts)).depth
    for perm in ([1, 2, 0], [2, 1, 0], [0, 2, 1]):
        d = depth_exact_2d(embed_simplex(theta[perm].reshape(1, -1))[0],
                           embed_simplex(pts[:, perm])).depth
        assert d == base
