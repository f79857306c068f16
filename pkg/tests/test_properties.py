from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from conformal_dirac.exact import Poly, RationalFunction, pochhammer, poly_gcd, shifted_product
from conformal_dirac.operators import conformal_power, expand_linear_factors, substitute_c
from conformal_dirac.series import FormalSeries
from conformal_dirac.special import QFamilySpec, hyp_pfq_terminating, q_closed, q_recurrence
from conformal_dirac.sphere import factored_value, operator_value

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
coeff_lists = st.lists(small_fractions, max_size=5)


def polys(var="y"):
    return coeff_lists.map(lambda cs: Poly(cs, var))


def nonzero_polys(var):
    return polys(var).filter(bool)


settings.register_profile("artifact", max_examples=60, deadline=None)
settings.load_profile("artifact")


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert (p + q) - q == p


@given(polys(), small_fractions)
def test_eval_is_homomorphism(p, x):
    q = p * p + p
    assert q(x) == p(x) * p(x) + p(x)


@given(small_fractions, st.integers(0, 8))
def test_pochhammer_step(a, l):
    assert pochhammer(a, l + 1) == pochhammer(a, l) * (a + l)


@given(st.integers(-6, 10), st.integers(0, 6))
def test_pochhammer_product_identities(yv, l):
    y = Fraction(yv)
    assert shifted_product("square", l)(y * y) == (-1) ** l * pochhammer(1 - y, l) * pochhammer(y + 1, l)
    assert shifted_product("triangular", l)(y * (y + 1)) == (-1) ** l * pochhammer(-y, l) * pochhammer(1 + y, l)


@given(polys("lam"), nonzero_polys("lam"), polys("lam"), nonzero_polys("lam"))
def test_rational_function_normal_form(a, b, c, d):
    f, g = RationalFunction(a, b), RationalFunction(c, d)
    for h in (f + g, f * g, f - g):
        assert h.den.lead == 1
        assert poly_gcd(h.num, h.den).degree <= 0
        assert RationalFunction(h.num, h.den) == h
    assert (f + g) - g == f
    if g:
        assert (f * g) / g == f


@given(st.fractions(min_value=3, max_value=12, max_denominator=2), st.integers(1, 6), st.sampled_from(["spinor", "function"]))
def test_closed_form_matches_recurrence(n, k, family):
    spec = QFamilySpec(family, n, k)
    rec = q_recurrence(spec, k)
    for m in range(k + 1):
        closed = q_closed(spec, m)
        assert closed == rec[m]
        assert closed.degree == m and closed.lead == 1


@given(st.permutations([-3, Fraction(5, 2), Fraction(-1, 3)]), st.fractions(min_value=1, max_value=6, max_denominator=3))
def test_hypergeometric_symmetric_in_upper(upper, b):
    ref = hyp_pfq_terminating([-3, Fraction(5, 2), Fraction(-1, 3)], [b, b + Fraction(1, 2)])
    assert hyp_pfq_terminating(upper, [b + Fraction(1, 2), b]) == ref


@given(st.integers(0, 6), st.fractions(min_value=-20, max_value=20, max_denominator=9))
def test_spectral_value_odd_and_consistent(N, lam):
    op = conformal_power(N, 1)
    assert operator_value(op, lam) == factored_value(N, lam)
    assert factored_value(N, -lam) == -factored_value(N, lam)


@given(st.integers(0, 5), small_fractions)
def test_linear_factors_any_curvature(N, c):
    assert substitute_c(expand_linear_factors(N), c) == conformal_power(N, c)


@given(st.lists(small_fractions, min_size=1, max_size=6).filter(lambda cs: cs[0] != 0), st.integers(0, 8))
def test_series_inverse(cs, order):
    s = FormalSeries(cs, order)
    assert s * s.inverse() == FormalSeries([1], order)
