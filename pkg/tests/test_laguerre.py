import math

import numpy as np
import pytest
from scipy.special import eval_genlaguerre

from pdmorse import LaguerreSpec, ParameterError, laguerre, laguerre_derivative


def series_value(n: int, a: float, y: float) -> float:
    """Explicit finite-sum oracle: sum_k (-1)^k C(n+a, n-k) y^k / k!."""
    total = 0.0
    for k in range(n + 1):
        # C(n+a, n-k) = prod_{j=1}^{n-k} (a+k+j)/j
        binom = 1.0
        for j in range(1, n - k + 1):
            binom *= (a + k + j) / j
        total += (-1.0) ** k * binom * y**k / math.factorial(k)
    return total


class TestValues:
    def test_degree_zero_is_one(self):
        for a in (-0.5, 0.0, 3.2):
            for y in (0.0, 1.0, 17.5):
                assert laguerre(LaguerreSpec(0, a), y) == 1.0

    def test_degree_one_linear(self):
        assert laguerre(LaguerreSpec(1, 2.0), 1.5) == pytest.approx(1.5)  # a + 1 - y

    def test_degree_two_example(self):
        # (a+1)(a+2)/2 - (a+2) y + y^2/2 = 3 - 6 + 2 = -1 at a=1, y=2
        assert laguerre(LaguerreSpec(2, 1.0), 2.0) == pytest.approx(-1.0, rel=1e-14)

    @pytest.mark.parametrize("n", range(9))
    @pytest.mark.parametrize("a", [-0.5, 0.0, 1.0, 2.5])
    @pytest.mark.parametrize("y", [0.0, 0.1, 1.0, 5.0, 20.0])
    def test_recurrence_matches_series(self, n, a, y):
        got = laguerre(LaguerreSpec(n, a), y)
        want = series_value(n, a, y)
        assert got == pytest.approx(want, rel=1e-10, abs=1e-10)

    @pytest.mark.parametrize("n", range(9))
    def test_value_at_origin_is_binomial(self, n):
        a = 1.7
        want = 1.0
        for k in range(1, n + 1):
            want *= (a + k) / k
        assert laguerre(LaguerreSpec(n, a), 0.0) == pytest.approx(want, rel=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_against_scipy(self, n):
        y = np.linspace(0.0, 30.0, 31)
        got = laguerre(LaguerreSpec(n, 0.75), y)
        want = eval_genlaguerre(n, 0.75, y)
        assert np.allclose(got, want, rtol=1e-10, atol=1e-12)


class TestDerivative:
    @pytest.mark.parametrize("n", [1, 2, 5, 8])
    def test_derivative_identity_by_finite_differences(self, n):
        # d/dy L_n^(a) = -L_{n-1}^(a+1)
        a = 0.6
        spec = LaguerreSpec(n, a)
        h = 1e-6
        for y in (0.3, 1.0, 4.0, 12.0):
            fd = (laguerre(spec, y + h) - laguerre(spec, y - h)) / (2 * h)
            assert laguerre_derivative(spec, y) == pytest.approx(fd, rel=1e-6, abs=1e-6)

    def test_derivative_beyond_degree_is_zero(self):
        assert laguerre_derivative(LaguerreSpec(1, 0.0), 2.0, order=2) == 0.0
        assert laguerre_derivative(LaguerreSpec(0, 0.0), 2.0, order=1) == 0.0


class TestValidation:
    def test_invalid_upper_index(self):
        with pytest.raises(ParameterError):
            LaguerreSpec(2, -1.0)
        with pytest.raises(ParameterError):
            LaguerreSpec(2, -3.5)

    def test_negative_degree(self):
        with pytest.raises(ParameterError):
            LaguerreSpec(-1, 0.0)

    def test_negative_argument(self):
        with pytest.raises(ParameterError):
            laguerre(LaguerreSpec(2, 0.0), -0.5)
