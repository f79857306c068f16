from fractions import Fraction
from math import factorial

import pytest

from conformal_dirac.operators import CExt, dirac
from conformal_dirac.series import (
    FormalSeries,
    conformal_factor_series,
    holographic_series,
    variation_series,
)

D = dirac()


class TestFormalSeries:
    def test_inverse_of_geometric(self):
        s = FormalSeries([1, -1], 6)
        assert s.inverse() == FormalSeries([1] * 7, 6)

    def test_truncation(self):
        s = FormalSeries([1, 1], 3)
        assert (s * s * s * s).coeffs == (1, 4, 6, 4)

    def test_mixed_orders(self):
        assert (FormalSeries([1, 2, 3], 2) + FormalSeries([1], 5)).order == 2

    def test_zero_constant_term(self):
        with pytest.raises(ZeroDivisionError):
            FormalSeries([0, 1], 3).inverse()

    def test_derivative(self):
        assert FormalSeries([0, 0, 0, Fraction(1, 2)], 3).derivative_at_zero(3) == 3


class TestVariation:
    @pytest.mark.parametrize("n,J", [(3, Fraction(3, 2)), (4, Fraction(-2)), (6, Fraction(3, 7))])
    def test_derivatives(self, n, J):
        v = variation_series(17, J, n)
        for l in range(9):
            assert v.dirac_family.derivative_at_zero(2 * l) == D * CExt(factorial(2 * l) * (J / (2 * n)) ** l)
            assert v.f_r.derivative_at_zero(2 * l) == Fraction(factorial(2 * l), 2 ** l) * (J / n) ** l
            if 2 * l + 1 <= 17:
                assert v.dirac_family.derivative_at_zero(2 * l + 1) == 0
                assert v.f_r.derivative_at_zero(2 * l + 1) == 0

    def test_mean_curvature(self):
        v = variation_series(5, Fraction(3, 7), 5)
        assert v.mean_curvature[1] == Fraction(3, 35)
        assert v.mean_curvature[3] == Fraction(3, 35) * Fraction(3, 70)

    def test_metric_factor(self):
        J, n = Fraction(2), 4
        v = variation_series(6, J, n)
        base = conformal_factor_series(6, J, n)
        assert v.h_r == base * base
        assert v.h_r.coeffs == (1, 0, Fraction(-1, 2), 0, Fraction(1, 16), 0, 0)

    def test_family_is_scaled_dirac(self):
        v = variation_series(8, Fraction(-1, 3), 7)
        assert v.dirac_family == v.f_r * D


class TestHolographic:
    def test_leading(self):
        assert holographic_series(0, 2, 4)[0] == D

    def test_r2(self):
        assert holographic_series(2, 2, 4)[2] == D * CExt(Fraction(1, 4))

    def test_odd_vanish(self):
        h = holographic_series(9, Fraction(3, 7), 5)
        assert all(h[i] == 0 for i in range(1, 10, 2))

    @pytest.mark.parametrize("n,J", [(3, Fraction(3, 2)), (5, Fraction(-2)), (8, Fraction(3, 7))])
    def test_geometric(self, n, J):
        for order in range(17):
            prod = holographic_series(order, J, n) * conformal_factor_series(order, J, n)
            assert prod == FormalSeries([D], order)
