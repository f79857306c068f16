from fractions import Fraction

import pytest

from conformal_dirac import special
from conformal_dirac.exact import Poly, shifted_product
from conformal_dirac.special import (
    HahnParams,
    NonTerminatingError,
    ParameterClash,
    QFamilySpec,
    ZeroLowerParameter,
    dual_hahn_R,
    dual_hahn_identity_check,
    dual_hahn_identity_sides,
    hahn_Q,
    hyp_pfq_terminating,
    q_closed,
    q_recurrence,
)

y = Poly.x("y")


class TestHypergeometric:
    def test_zero_upper(self):
        assert hyp_pfq_terminating([0, 5, Fraction(1, 3)], [2, 7]) == 1

    def test_two_terms(self):
        assert hyp_pfq_terminating([-1, 2, 3], [4, 5]) == Fraction(7, 10)

    def test_three_terms(self):
        # direct sum 1 + (-2)(-2)(2)/(1*-3) + (-2)(-1)(-2)(-1)(2)(3)/(1*2*-3*-2*2)
        assert hyp_pfq_terminating([-2, -2, 2], [1, -3]) == Fraction(-2, 3)

    def test_non_terminating(self):
        with pytest.raises(NonTerminatingError):
            hyp_pfq_terminating([Fraction(1, 2), 1], [3])

    def test_zero_lower_in_range(self):
        with pytest.raises(ZeroLowerParameter) as info:
            hyp_pfq_terminating([-3, 1], [-1])
        assert info.value.b == -1


class TestHahn:
    def test_degree_zero(self):
        assert hahn_Q(0, Fraction(5, 2), HahnParams(1, 2, 4)) == 1

    def test_at_origin(self):
        assert hahn_Q(1, 0, HahnParams(3, Fraction(1, 2), 6)) == 1

    def test_q1_at_one(self):
        # 3F2[-1, -1, 4; 2, -4; 1] = 1 + (-1)(-1)(4) / (2 * -4)
        assert hahn_Q(1, 1, HahnParams(1, 1, 5)) == Fraction(1, 2)

    def test_degree_out_of_range(self):
        with pytest.raises(ValueError):
            hahn_Q(5, 1, HahnParams(1, 1, 5))

    def test_dual_trivial(self):
        p = HahnParams(2, 1, 6)
        assert dual_hahn_R(0, 3, p) == 1
        assert dual_hahn_R(4, 0, p) == 1

    def test_dual_value(self):
        # Q_1(2) = 3F2[-1, -2, 4; 2, -3; 1] = 1 + (-1)(-2)(4) / (2 * -3)
        assert dual_hahn_R(2, 1, HahnParams(1, 1, 4)) == Fraction(-1, 3)

    def test_duality_is_swap(self):
        p = HahnParams(Fraction(5, 2), Fraction(-3, 2), 7)
        for k in range(6):
            for n in range(7):
                assert dual_hahn_R(k, n, p) == hahn_Q(n, k, p)

    def test_lattice(self):
        assert HahnParams(2, -1, 3).lam(1) == 3


class TestQFamilies:
    def test_q0(self):
        assert q_closed(QFamilySpec("spinor", 7, 2), 0) == 1
        assert q_recurrence(QFamilySpec("spinor", 7, 2), 0) == [1]

    def test_q1_spinor(self):
        spec = QFamilySpec("spinor", 4, 3)
        assert q_closed(spec, 1) == y - 7
        assert q_recurrence(spec, 1) == [1, y - 7]

    def test_q1_function(self):
        assert q_closed(QFamilySpec("function", 4, 3), 1) == y - 4

    def test_spinor_n4_k3(self):
        spec = QFamilySpec("spinor", 4, 3)
        assert q_closed(spec, 2) == y ** 2 - 13 * y + 36
        assert q_closed(spec, 3) == y ** 3 - 14 * y ** 2 + 49 * y - 36

    def test_function_n6_k4(self):
        spec = QFamilySpec("function", 6, 4)
        assert q_recurrence(spec, 3)[1:] == [
            y - 9,
            y ** 2 - 18 * y + 72,
            y ** 3 - 23 * y ** 2 + 162 * y - 360,
        ]

    def test_top_is_shifted_product(self):
        for n in (3, 5, 8):
            for k in (1, 3, 6):
                assert q_recurrence(QFamilySpec("spinor", n, k), k)[-1] == shifted_product("square", k)

    def test_half_integer_parameters(self):
        spec = QFamilySpec("spinor", Fraction(7, 2), Fraction(5, 2))
        rec = q_recurrence(spec, 4)
        assert all(q_closed(spec, m) == rec[m] for m in range(5))

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QFamilySpec("spinor", 2, 3)
        with pytest.raises(ValueError):
            QFamilySpec("spinor", 4, 0)
        with pytest.raises(ValueError):
            QFamilySpec("vector", 4, 1)


class TestDualHahnIdentity:
    def test_m_zero(self):
        lhs, rhs, _ = dual_hahn_identity_sides(QFamilySpec("spinor", 5, 3), 0, 4)
        assert lhs == rhs == 1

    def test_spinor_example(self):
        # q~_1 = y - 7 at y^2 = 4, right side (-1)(3)(2) 3F2[-1,-1,3;3,-2;1] = -6 * 1/2
        lhs, rhs, alt = dual_hahn_identity_sides(QFamilySpec("spinor", 4, 3), 1, 2)
        assert lhs == rhs == alt == -3

    def test_function_example(self):
        # q_1 = y - 4 at lam(1) = 1 * 2, right side (-1)(2)(2) 3F2[-1,-1,2;2,-2;1] = -4 * 1/2
        lhs, rhs, alt = dual_hahn_identity_sides(QFamilySpec("function", 4, 3), 1, 1)
        assert lhs == rhs == alt == -2

    def test_literal_shift_fails(self):
        # Evaluating the spinor q-polynomial at lam(y - 1) = (y-1)(y+1) instead of
        # y^2 = lam(y-1) + 1 breaks the identity already at the smallest case.
        spec = QFamilySpec("spinor", 4, 3)
        _, rhs, _ = dual_hahn_identity_sides(spec, 1, 2)
        literal = q_closed(spec, 1)(HahnParams(2, -1, 3).lam(1))
        assert literal == -4 and literal != rhs

    def test_function_lattice_uses_its_own_parameters(self):
        # the function family has alpha + beta + 1 = 1, so its lattice is y(y+1);
        # the t(t+2) lattice gives a different value
        spec = QFamilySpec("function", 4, 3)
        _, rhs, _ = dual_hahn_identity_sides(spec, 1, 1)
        assert q_closed(spec, 1)(3) == -1 != rhs

    def test_clash_is_error(self):
        with pytest.raises(ParameterClash):
            dual_hahn_identity_check(QFamilySpec("spinor", 4, 3), 3, 1)

    def test_grid(self):
        for family in special.FAMILIES:
            for n in (3, 4, 9):
                for k in (1, 2, 5):
                    spec = QFamilySpec(family, n, k)
                    for m in range(k):
                        for yint in range(1, 9):
                            assert dual_hahn_identity_check(spec, m, yint)
