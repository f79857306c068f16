from fractions import Fraction

import pytest

from conformal_dirac.exact import (
    LAMBDA,
    PoleError,
    Poly,
    RationalFunction,
    VariableMismatch,
    limit_form,
    pochhammer,
    poly_gcd,
    shifted_product,
)

y = Poly.x("y")
lam_poly = Poly.x("lam")


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(Fraction(7, 3), 0) == 1

    def test_hits_zero(self):
        assert pochhammer(-2, 5) == 0

    def test_integer_start(self):
        assert pochhammer(3, 4) == 360

    def test_half_start(self):
        assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)

    def test_negative_n_identity(self):
        for N in range(10):
            sign = -1 if N % 2 else 1
            assert pochhammer(-N, N) == sign * pochhammer(1, N)


class TestPoly:
    def test_difference_of_squares(self):
        assert (y - 1) * (y + 1) == y * y - 1

    def test_additive_identity(self):
        p = y * y - 3 * y + Fraction(1, 2)
        assert p + Poly((), "y") == p

    def test_eval(self):
        assert (y * y - 4)(3) == 5

    def test_trailing_zeros_stripped(self):
        p = Poly([1, 2, 0, 0], "y")
        assert p.degree == 1 and p.coeffs == (1, 2)

    def test_zero_polynomial(self):
        z = Poly((), "y")
        assert z.degree == -1 and not z

    def test_compose(self):
        assert (y * y).compose(y + 1) == y * y + 2 * y + 1

    def test_same_level_variables_clash(self):
        with pytest.raises(VariableMismatch):
            Poly.x("c") + Poly.x("J")
        with pytest.raises(VariableMismatch):
            Poly.x("D") * y

    def test_constants_are_variable_agnostic(self):
        assert Poly([3], "y") == Poly([3], "D") == 3

    def test_divmod(self):
        q, r = divmod(y ** 3 - 1, y - 1)
        assert q == y * y + y + 1 and not r

    def test_gcd(self):
        g = poly_gcd((y - 1) * (y - 2) * (y + 5), (y - 2) * (y + 5) * (y + 7))
        assert g == (y - 2) * (y + 5)


class TestShiftedProduct:
    def test_square_empty(self):
        assert shifted_product("square", 0) == 1

    def test_square_two(self):
        assert shifted_product("square", 2) == y * y - 5 * y + 4

    def test_triangular_two(self):
        assert shifted_product("triangular", 2) == y * y - 2 * y

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            shifted_product("cubic", 2)


class TestRationalFunction:
    def test_eval(self):
        f = RationalFunction(1, 2 * lam_poly + 1)
        assert f(0) == 1

    def test_cancellation_to_one(self):
        f = RationalFunction(1, 2 * lam_poly + 1)
        assert f * RationalFunction(2 * lam_poly + 1) == 1

    def test_limit_form_genuine_pole(self):
        with pytest.raises(PoleError) as info:
            limit_form(2 * lam_poly + 1, (2 * lam_poly + 1) ** 2, Fraction(-1, 2))
        assert info.value.order == 1
        assert info.value.point == Fraction(-1, 2)

    def test_limit_form_removable(self):
        f = RationalFunction((lam_poly + 1) * (lam_poly - 2), (lam_poly + 1) * (lam_poly + 3))
        assert f.limit(-1) == Fraction(-3, 2)
        assert limit_form((lam_poly + 1) * (lam_poly - 2), (lam_poly + 1) * (lam_poly + 3), Fraction(-1)) == Fraction(-3, 2)

    def test_eval_at_pole(self):
        with pytest.raises(PoleError) as info:
            RationalFunction(1, (2 * lam_poly + 1) ** 3)(Fraction(-1, 2))
        assert info.value.order == 3

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RationalFunction(1) / RationalFunction(0)
        with pytest.raises(ZeroDivisionError):
            RationalFunction(1, 0)

    def test_reduced_and_monic(self):
        f = RationalFunction(2 * lam_poly + 4, (lam_poly + 2) * (3 * lam_poly + 1))
        assert f.den == lam_poly + Fraction(1, 3)
        assert f.num == Fraction(2, 3)

    def test_reduction_idempotent(self):
        f = RationalFunction(lam_poly * lam_poly - 1, lam_poly * lam_poly + 3 * lam_poly + 2)
        g = RationalFunction(f.num, f.den)
        assert (g.num, g.den) == (f.num, f.den)

    def test_add_sub(self):
        a = 1 / (2 * LAMBDA + 1)
        b = 1 / (2 * LAMBDA + 3)
        assert a - b == 2 / ((2 * LAMBDA + 1) * (2 * LAMBDA + 3))
        assert a + a - 2 * a == 0

    def test_display(self):
        assert str(1 / (2 * LAMBDA + 1)) == "1/(2*lam + 1)"
