import math

import mpmath
import numpy as np
import pytest
from scipy import special as scipy_special

from simplexdepth.special import (
    NonConvergenceError,
    regularized_incomplete_beta,
    regularized_lower_gamma,
    regularized_upper_gamma,
)

ABS_TOL = 1e-12


class TestIncompleteBeta:
    def test_uniform_cdf(self):
        for x in (0.0, 0.3, 1.0):
            assert regularized_incomplete_beta(1.0, 1.0, x) == pytest.approx(
                x, abs=ABS_TOL)

    def test_beta_1_2_closed_form(self):
        assert regularized_incomplete_beta(1.0, 2.0, 1 / 3) == pytest.approx(
            5 / 9, abs=ABS_TOL)

    def test_reflection_identity_random_grid(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            a = float(np.exp(rng.uniform(np.log(0.1), np.log(500))))
            b = float(np.exp(rng.uniform(np.log(0.1), np.log(500))))
            x = float(rng.uniform())
            lhs = regularized_incomplete_beta(a, b, x)
            rhs = regularized_incomplete_beta(b, a, 1.0 - x)
            assert lhs + rhs == pytest.approx(1.0, abs=ABS_TOL)

    def test_against_scipy_random_grid(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            a = float(np.exp(rng.uniform(np.log(0.05), np.log(2000))))
            b = float(np.exp(rng.uniform(np.log(0.05), np.log(2000))))
            x = float(rng.uniform())
            assert regularized_incomplete_beta(a, b, x) == pytest.approx(
                float(scipy_special.betainc(a, b, x)), abs=ABS_TOL)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, -2.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, 1.0, 1.5)


class TestUpperGamma:
    def test_exponential_survival(self):
        assert regularized_upper_gamma(1.0, 1.0) == pytest.approx(
            math.exp(-1.0), abs=ABS_TOL)

    def test_at_zero(self):
        for a in (0.25, 1.0, 4.0):
            assert regularized_upper_gamma(a, 0.0) == 1.0

    def test_half_shape_against_quadrature(self):
        # independent oracle: high-precision quadrature of the density
        for x in (0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
            quad = mpmath.quad(
                lambda t: t ** mpmath.mpf("-0.5") * mpmath.exp(-t),
                [x, mpmath.inf]) / mpmath.gamma(mpmath.mpf("0.5"))
            assert regularized_upper_gamma(0.5, x) == pytest.approx(
                float(quad), abs=ABS_TOL)
            # and the complementary-error-function identity
            assert regularized_upper_gamma(0.5, x) == pytest.approx(
                math.erfc(math.sqrt(x)), abs=ABS_TOL)

    def test_against_scipy_random_grid(self):
        rng = np.random.default_rng(13)
        for _ in range(500):
            a = float(np.exp(rng.uniform(np.log(0.05), np.log(2000))))
            x = float(np.exp(rng.uniform(np.log(1e-8), np.log(5000))))
            assert regularized_upper_gamma(a, x) == pytest.approx(
                float(scipy_special.gammaincc(a, x)), abs=ABS_TOL)
            assert regularized_lower_gamma(a, x) == pytest.approx(
                float(scipy_special.gammainc(a, x)), abs=ABS_TOL)

    def test_complementarity(self):
        for a, x in ((0.3, 0.2), (2.0, 5.0), (10.0, 3.0)):
            total = regularized_upper_gamma(a, x) + regularized_lower_gamma(a, x)
            assert total == pytest.approx(1.0, abs=ABS_TOL)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            regularized_upper_gamma(0.0, 1.0)
        with pytest.raises(ValueError):
            regularized_upper_gamma(1.0, -0.1)


def test_nonconvergence_error_is_runtime_error():
    assert issubclass(NonConvergenceError, RuntimeError)
