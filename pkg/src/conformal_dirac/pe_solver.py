"""Spinor coefficient recurrences on Einstein manifolds.

The formal eigen-spinor expansion ``sum r^j (theta_j^+ + theta_j^-)`` is
solved with the spectral parameter ``lam`` kept symbolic.  Every
``theta_j^{+-}`` is a polynomial in the commuting symbol ``D`` applied to the
seed spinor; its coefficients are rational functions of ``lam`` (or, when
``J`` is formal, polynomials in ``J`` over those).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Iterator, Optional, Union

from .exact import LAMBDA, Poly, RationalFunction, as_fraction, pochhammer, rf_limit_coeffs
from .operators import CExt, OperatorPoly, dirac

Scalar = Union[Fraction, Poly]


class UnsupportedParameter(ValueError):
    pass


@dataclass(frozen=True)
class EinsteinParams:
    """Dimension ``n`` and normalized scalar curvature ``J`` (``None`` = formal)."""

    n: int
    J: Optional[Fraction] = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise ValueError(f"dimension n must be an integer >= 3, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if self.J is not None:
            object.__setattr__(self, "J", as_fraction(self.J))

    @property
    def formal(self) -> bool:
        return self.J is None

    @property
    def c(self) -> Optional[Fraction]:
        return None if self.J is None else 2 * self.J / self.n

    @property
    def flat(self) -> bool:
        return self.J == 0

    def J_symbol(self) -> Scalar:
        return Poly.x("J") if self.J is None else self.J


DPoly = Poly


def _zero() -> DPoly:
    return Poly((), "D")


@dataclass(frozen=True)
class SpinorCoeffState:
    params: EinsteinParams
    jmax: int
    theta_plus: tuple
    theta_minus: tuple

    def plus(self, j: int) -> DPoly:
        return self.theta_plus[j] if 0 <= j <= self.jmax else _zero()

    def minus(self, j: int) -> DPoly:
        return self.theta_minus[j] if 0 <= j <= self.jmax else _zero()

    def phi(self, l: int) -> DPoly:
        return self.minus(2 * l + 1) if l >= 0 else _zero()

    def parity_ok(self) -> bool:
        return all(not self.theta_plus[j] for j in range(1, self.jmax + 1, 2)) and all(
            not self.theta_minus[j] for j in range(0, self.jmax + 1, 2)
        )


def _rf(x) -> RationalFunction:
    return RationalFunction(x)


def solve_coupled(params: EinsteinParams, jmax: int) -> SpinorCoeffState:
    """Solve the coupled first-order system for ``0 <= j <= jmax``.

    ``j theta_j^+ = D theta_{j-1}^- + (n+j-2)/(2n) J theta_{j-2}^+``
    ``(2 lam + j) theta_j^- = D theta_{j-1}^+ + (2 lam + n+j-2)/(2n) J theta_{j-2}^-``
    """
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    n = params.n
    J = params.J_symbol()
    lam = LAMBDA
    plus = [Poly([_rf(1)], "D")]
    minus = [_zero()]

    def get(seq, j):
        return seq[j] if j >= 0 else _zero()

    for j in range(1, jmax + 1):
        rhs_p = get(minus, j - 1).shift(1) + get(plus, j - 2).scale(Fraction(n + j - 2, 2 * n) * J)
        rhs_m = get(plus, j - 1).shift(1) + get(minus, j - 2).scale((2 * lam + n + j - 2) / (2 * n) * J)
        plus.append(rhs_p.scale(Fraction(1, j)))
        minus.append(rhs_m.scale(1 / (2 * lam + j)))
    return SpinorCoeffState(params, jmax, tuple(plus), tuple(minus))


def _odd_shift_product(j: int) -> Poly:
    """``prod_{i odd <= j} (lam + i/2)``: every denominator met up to step ``j`` divides it."""
    out = Poly([Fraction(1)], "lam")
    for i in range(1, j + 1, 2):
        out = out * Poly([Fraction(i, 2), Fraction(1)], "lam")
    return out


def _integer_form(p: Poly) -> tuple[list, int]:
    """``p = coeffs / den`` with integer ``coeffs``."""
    den = lcm(*(Fraction(c).denominator for c in p.coeffs)) if p.coeffs else 1
    return [int(Fraction(c) * den) for c in p.coeffs], den


def _convolve(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for k, y in enumerate(b):
                out[i + k] += x * y
    return out


def _vanishes_over(terms, common: Poly) -> Optional[bool]:
    """Exact test of ``sum scalar * D^shift * p == 0`` on numerators over ``common``.

    Every term is brought to ``num / common``; the numerators are summed as
    integer coefficient lists over one shared denominator.  Returns ``None``
    when some coefficient is not a plain rational function of ``lam`` or its
    denominator does not divide ``common``.
    """
    width = max((len(p.coeffs) + sh for _, p, sh in terms), default=0)
    cofactors: dict = {}
    scalars = []
    for scalar, _, _ in terms:
        if isinstance(scalar, RationalFunction):
            scalars.append(scalar)
        elif isinstance(scalar, (int, Fraction)):
            scalars.append(_rf(scalar))
        else:
            return None
    for d in range(width):
        total: list = []
        total_den = 1
        for sc, (_, p, sh) in zip(scalars, terms):
            k = d - sh
            if k < 0 or k >= len(p.coeffs) or not p.coeffs[k]:
                continue
            f = p.coeffs[k]
            if not isinstance(f, RationalFunction):
                return None
            key = (sc.den.coeffs, f.den.coeffs)
            if key not in cofactors:
                q, r = divmod(common, sc.den * f.den)
                cofactors[key] = None if r else _integer_form(q)
            cof = cofactors[key]
            if cof is None:
                return None
            a, da = _integer_form(sc.num)
            b, db = _integer_form(f.num)
            term = _convolve(_convolve(a, b), cof[0])
            tden = da * db * cof[1]
            g = gcd(total_den, tden)
            ft, fs = tden // g, total_den // g
            size = max(len(total), len(term))
            total = [
                (total[i] * ft if i < len(total) else 0) + (term[i] * fs if i < len(term) else 0)
                for i in range(size)
            ]
            total_den *= ft
        if any(total):
            return False
    return True


def _combine(terms) -> DPoly:
    out = _zero()
    for scalar, p, sh in terms:
        out = out + p.shift(sh).scale(scalar)
    return out


def _residual(terms_lhs, terms_rhs, common: Poly) -> Optional[tuple]:
    """``None`` if both sides agree, else the two rendered sides."""
    signed = list(terms_lhs) + [(-s, p, sh) for s, p, sh in terms_rhs]
    verdict = _vanishes_over(signed, common)
    if verdict is True:
        return None
    lhs, rhs = _combine(terms_lhs), _combine(terms_rhs)
    if verdict is None and lhs == rhs:
        return None
    return str(lhs), str(rhs)


def decouple_residuals(state: SpinorCoeffState) -> Iterator[dict]:
    """Yield every failing instance of the second-order (decoupled) relations."""
    n = state.params.n
    J = state.params.J_symbol()
    J2 = J * J
    lam = LAMBDA
    for j in range(2, state.jmax + 1):
        common = _odd_shift_product(j + 1)
        den = 2 * lam + j - 1
        shift_p = ((2 * lam + n + j - 3) * (j - 2) / (2 * n * den) + (2 * lam + j - 1) * (n + j - 2) / (2 * n * den))
        tail_p = (2 * lam + n + j - 3) * (n + j - 4) / (4 * n * n * den)
        prev = state.plus(j - 2)
        bad = _residual(
            [(Fraction(j), state.plus(j), 0)],
            [(1 / den, prev, 2), (shift_p * J, prev, 0), (-(tail_p * J2), state.plus(j - 4), 0)],
            common,
        )
        if bad:
            yield {"j": j, "branch": "+", "lhs": bad[0], "rhs": bad[1]}

        shift_m = (
            (2 * lam + j - 2) * (n + j - 3) / _rf(2 * n * (j - 1))
            + (2 * lam + n + j - 2) * (j - 1) / _rf(2 * n * (j - 1))
        )
        tail_m = (2 * lam + n + j - 4) * (n + j - 3) / _rf(4 * n * n * (j - 1))
        prev = state.minus(j - 2)
        bad = _residual(
            [(2 * lam + j, state.minus(j), 0)],
            [(Fraction(1, j - 1), prev, 2), (shift_m * J, prev, 0), (-(tail_m * J2), state.minus(j - 4), 0)],
            common,
        )
        if bad:
            yield {"j": j, "branch": "-", "lhs": bad[0], "rhs": bad[1]}


def decouple_check(state: SpinorCoeffState) -> bool:
    return next(decouple_residuals(state), None) is None


def phi_recurrence_residuals(state: SpinorCoeffState, lmax: int) -> Iterator[dict]:
    if state.jmax < 2 * lmax + 1:
        raise ValueError(f"state solved to j={state.jmax}, need j >= {2 * lmax + 1}")
    n = state.params.n
    J = state.params.J_symbol()
    lam = LAMBDA
    for l in range(1, lmax + 1):
        shift = (2 * lam + 2 * l - 1) * (n + 2 * l - 2) / _rf(2 * n) + 2 * l * (2 * lam + n + 2 * l - 1) / _rf(2 * n)
        tail = (2 * lam + n + 2 * l - 3) * (n + 2 * l - 2) / _rf(4 * n * n)
        prev = state.phi(l - 1)
        bad = _residual(
            [(2 * l * (2 * lam + 2 * l + 1), state.phi(l), 0)],
            [(_rf(1), prev, 2), (shift * J, prev, 0), (-(tail * (J * J)), state.phi(l - 2), 0)],
            _odd_shift_product(2 * l + 1),
        )
        if bad:
            yield {"l": l, "lhs": bad[0], "rhs": bad[1]}


def phi_recurrence_check(state: SpinorCoeffState, lmax: int) -> bool:
    return next(phi_recurrence_residuals(state, lmax), None) is None


def solution_prefactor(l: int) -> RationalFunction:
    """``4^l l! (lam + 3/2)_l``."""
    return pochhammer(LAMBDA + Fraction(3, 2), l) * (4 ** l * factorial(l))


def _J_monomial_coeff(value, power: int):
    """Coefficient ``a`` of ``value = a J^power`` (``value`` a ``J``-polynomial or scalar)."""
    if isinstance(value, Poly) and value.var == "J":
        others = [i for i, v in enumerate(value.coeffs) if v and i != power]
        if others:
            raise ArithmeticError(f"{value} is not homogeneous of degree {power} in J")
        return value[power]
    if power != 0:
        if not value:
            return value
        raise ArithmeticError(f"{value} is not homogeneous of degree {power} in J")
    return value


def solution_operator(params: EinsteinParams, l: int, state: Optional[SpinorCoeffState] = None) -> Poly:
    """``q~_l(y; lam)`` defined by ``4^l l! (n/2J)^l (lam+3/2)_l phi_l = q~_l(y) phi_0``.

    Read off ``phi_l`` from the solved system and rewritten in ``y = (n/2J) D^2``.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    if params.flat:
        raise UnsupportedParameter("y = (n/2J) D^2 needs J != 0; the flat conformal power is D^(2N+1)")
    if state is None or state.jmax < 2 * l + 1:
        state = solve_coupled(params, 2 * l + 1)
    # phi_0 = D / (2 lam + 1), so q~_l(y) D = (2 lam + 1) * prefactor * phi_l
    scaled = state.phi(l).scale(solution_prefactor(l) * (2 * LAMBDA + 1))
    half_n = Fraction(params.n, 2)
    coeffs = []
    for i in range(l + 1):
        a = scaled[2 * i + 1]
        if params.formal:
            coeffs.append(_rf(0) + _J_monomial_coeff(a, l - i) * half_n ** (l - i))
        else:
            coeffs.append(_rf(0) + a * (half_n / params.J) ** (l - i))
    if any(scaled[2 * i] for i in range(l + 1)):
        raise ArithmeticError("phi_l is expected to be odd in D")
    return Poly(coeffs, "y")


def solution_operator_recurrence(n, lmax: int) -> list[Poly]:
    """``q~_0 .. q~_lmax`` from their own three-term recurrence in ``y`` (no ``J``)."""
    n2 = as_fraction(n) / 2
    lam = LAMBDA
    half = Fraction(1, 2)
    y = Poly([_rf(0), _rf(1)], "y")
    prev, cur = Poly((), "y"), Poly([_rf(1)], "y")
    out = [cur]
    for l in range(1, lmax + 1):
        a = (lam + l - half) * (l + n2 - 1) + l * (lam + l + n2 - half)
        b = (l - 1) * (l + n2 - 1) * (l + lam - half) * (l + lam + n2 - Fraction(3, 2))
        prev, cur = cur, (y + a) * cur - prev.scale(b)
        out.append(cur)
    return out


def special_lambda(N: int) -> Fraction:
    return Fraction(-(2 * N + 1), 2)


def residue_operator(params: EinsteinParams, N: int, state: Optional[SpinorCoeffState] = None) -> DPoly:
    """``lim (lam - lam_N) phi_N`` at ``lam_N = -(2N+1)/2``, via limit-form per coefficient."""
    if state is None or state.jmax < 2 * N + 1:
        state = solve_coupled(params, 2 * N + 1)
    lam0 = special_lambda(N)
    return rf_limit_coeffs(state.phi(N).scale(LAMBDA - lam0), lam0)


def obstruction_normalizer(N: int) -> Fraction:
    """``2 * 4^N N! (-N)_N``: turns the residue of ``phi_N`` into a monic operator."""
    return 2 * 4 ** N * factorial(N) * pochhammer(Fraction(-N), N)


def obstruction_extract(params: EinsteinParams, N: int, state: Optional[SpinorCoeffState] = None) -> OperatorPoly:
    """Conformal power obtained from the obstruction of the expansion at ``lam = -(2N+1)/2``.

    The coefficients are returned in ``Q[c]`` with ``c = 2J/n``; for formal
    ``J`` they are genuine polynomials in ``c``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if params.flat:
        return Poly([CExt(0)] * (2 * N + 1) + [CExt(1)], "D")
    res = residue_operator(params, N, state).scale(obstruction_normalizer(N))
    half_n = Fraction(params.n, 2)
    coeffs = []
    for k, v in enumerate(res.coeffs):
        if params.formal:
            # J = (n/2) c
            jp = v if isinstance(v, Poly) else Poly([v], "J")
            cp = Poly([as_fraction(a) * half_n ** i for i, a in enumerate(jp.coeffs)], "c")
            coeffs.append(CExt(cp))
        else:
            coeffs.append(CExt(as_fraction(v)))
    return Poly(coeffs, "D")


def obstruction_via_solution_operator(params: EinsteinParams, N: int) -> OperatorPoly:
    """``(n/2J)^{-N} q~_N((n/2J) D^2) D`` with ``q~_N`` taken at ``lam = -(2N+1)/2``."""
    if params.flat:
        raise UnsupportedParameter("needs J != 0")
    q = solution_operator(params, N)
    lam0 = special_lambda(N)
    c = CExt(Poly.x("c")) if params.formal else CExt(params.c)
    D = dirac()
    out = Poly((), "D")
    # (n/2J)^{-N} ((n/2J) D^2)^i = c^{N-i} D^{2i}
    for i, coef in enumerate(q.coeffs):
        v = coef(lam0)
        term = Poly([CExt(v)], "D")
        for _ in range(N - i):
            term = term * c
        out = out + term * (D * D) ** i
    return out * D
