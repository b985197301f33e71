import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from simplexdepth import HalfspaceDepth, SimplexCoordinates
from simplexdepth.depth import depth_exact_2d
from simplexdepth.geometry import embed_simplex
from simplexdepth.sampling import sample_uniform_simplex


@pytest.fixture(scope="module")
def cloud():
    return np.random.default_rng(0).normal(size=(200, 2))


class TestSimplexCoordinates:
    def test_round_trip(self):
        pts = sample_uniform_simplex(4, 50, 1).points
        tr = SimplexCoordinates().fit(pts)
        emb = tr.transform(pts)
        assert emb.shape == (50, 3)
        np.testing.assert_allclose(tr.inverse_transform(emb), pts, atol=1e-12)

    def test_matches_function_api(self):
        pts = sample_uniform_simplex(3, 30, 2).points
        np.testing.assert_array_equal(SimplexCoordinates().fit_transform(pts),
                                      embed_simplex(pts))

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            SimplexCoordinates().transform([[0.5, 0.5]])

    def test_dimension_check(self):
        tr = SimplexCoordinates().fit(sample_uniform_simplex(3, 10, 3).points)
        with pytest.raises(ValueError):
            tr.transform([[0.5, 0.5]])


class TestHalfspaceDepth:
    def test_exact_matches_function(self, cloud):
        est = HalfspaceDepth(method="exact").fit(cloud)
        theta = np.array([0.1, -0.2])
        assert est.depth_result(theta).depth == \
            depth_exact_2d(theta, cloud).depth

    def test_score_samples(self, cloud):
        est = HalfspaceDepth().fit(cloud)
        scores = est.score_samples([[0.0, 0.0], [50.0, 50.0]])
        assert scores.shape == (2,)
        assert scores[0] > scores[1] == 0.0

    def test_simplex_input_equals_manual_embedding(self):
        pts = sample_uniform_simplex(3, 300, 4).points
        est = HalfspaceDepth(method="exact", simplex_input=True).fit(pts)
        theta = np.array([0.2, 0.3, 0.5])
        manual = depth_exact_2d(embed_simplex(theta.reshape(1, -1))[0],
                                embed_simplex(pts))
        assert est.depth_result(theta).depth == manual.depth

    def test_brute_and_approx_methods(self, cloud):
        small = cloud[:40]
        exact = HalfspaceDepth(method="exact").fit(small)
        brute = HalfspaceDepth(method="brute").fit(small)
        approx = HalfspaceDepth(method="approx", num_directions=500,
                                seed=7).fit(small)
        theta = [0.05, 0.05]
        assert brute.depth_result(theta).depth == exact.depth_result(theta).depth
        assert approx.depth_result(theta).depth >= exact.depth_result(theta).depth

    def test_sklearn_protocol(self):
        est = HalfspaceDepth(method="approx", num_directions=50, seed=3)
        params = est.get_params()
        assert params["method"] == "approx"
        cloned = clone(est)
        assert cloned.get_params() == params
        est.set_params(method="exact")
        assert est.method == "exact"

    def test_exact_requires_planar(self):
        pts = sample_uniform_simplex(4, 20, 5).points
        with pytest.raises(ValueError):
            HalfspaceDepth(method="exact", simplex_input=True).fit(pts)

    def test_not_fitted(self):
        with pytest.raises(NotFittedError):
            HalfspaceDepth().score_samples([[0.0, 0.0]])

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            HalfspaceDepth(method="sweep").fit(np.zeros((3, 2)))
