"""Terminating hypergeometric sums, Hahn / dual Hahn polynomials and the
q-polynomial families attached to the Dirac and Laplace recurrences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact import Poly, as_fraction, pochhammer, shifted_product


class HypergeometricError(ValueError):
    pass


class NonTerminatingError(HypergeometricError):
    pass


class ZeroLowerParameter(HypergeometricError):
    def __init__(self, b, l: int):
        self.b = b
        self.l = l
        super().__init__(f"lower parameter {b} makes (b)_{l} vanish inside the summation range")


class ParameterClash(HypergeometricError):
    pass


def _nonpositive_int(a: Fraction) -> bool:
    return a.denominator == 1 and a <= 0


def hyp_pfq_terminating(upper, lower, z=1) -> Fraction:
    """Exact value of a terminating ``pFq[upper; lower; z]``.

    The sum stops at the first index where an upper Pochhammer symbol
    vanishes.  A lower parameter hitting zero before that point is an error.
    """
    upper = [as_fraction(a) for a in upper]
    lower = [as_fraction(b) for b in lower]
    z = as_fraction(z)
    stops = [-int(a) for a in upper if _nonpositive_int(a)]
    if not stops:
        raise NonTerminatingError(f"no nonpositive integer among upper parameters {upper}")
    last = min(stops)

    # The running sum is kept as integers over the running term denominator,
    # so the only gcd reduction happens once at the end.
    total_num, term_num, term_den = 1, 1, 1
    for l in range(last):
        num = z.numerator
        den = (l + 1) * z.denominator
        for a in upper:
            num *= a.numerator + l * a.denominator
            den *= a.denominator
        for b in lower:
            if b + l == 0:
                raise ZeroLowerParameter(b, l + 1)
            num *= b.denominator
            den *= b.numerator + l * b.denominator
        term_num *= num
        term_den *= den
        total_num = total_num * den + term_num
    return Fraction(total_num, term_den)


@dataclass(frozen=True)
class HahnParams:
    alpha: Fraction
    beta: Fraction
    bigN: int

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_fraction(self.alpha))
        object.__setattr__(self, "beta", as_fraction(self.beta))
        if int(self.bigN) != self.bigN or self.bigN < 1:
            raise ValueError(f"Hahn parameter N must be a positive integer, got {self.bigN}")

    def lam(self, t) -> Fraction:
        """Dual Hahn lattice ``t (t + alpha + beta + 1)``."""
        t = as_fraction(t)
        return t * (t + self.alpha + self.beta + 1)


def hahn_Q(n: int, x, p: HahnParams) -> Fraction:
    """Hahn polynomial ``Q_n(x; alpha, beta, N) = 3F2[-n, -x, n+a+b+1; a+1, 1-N; 1]``."""
    if not 0 <= n <= p.bigN - 1:
        raise ValueError(f"Hahn degree must lie in [0, {p.bigN - 1}], got {n}")
    return hyp_pfq_terminating(
        [-n, -as_fraction(x), n + p.alpha + p.beta + 1], [p.alpha + 1, 1 - p.bigN], 1
    )


def dual_hahn_R(k: int, n: int, p: HahnParams) -> Fraction:
    """Dual Hahn ``R_k`` at the lattice point ``lam(n)``, via ``R_k(lam(n)) = Q_n(k)``."""
    if k < 0:
        raise ValueError("dual Hahn degree must be nonnegative")
    return hahn_Q(n, k, p)


FAMILIES = ("spinor", "function")


@dataclass(frozen=True)
class QFamilySpec:
    """Which q-family (``spinor`` or ``function``) and its integer data ``(n, k)``.

    ``n`` and ``k`` are stored as Fractions so half-integer experiments work
    unchanged; the validating constructor still enforces ``n >= 3, k >= 1``.
    """

    family: str
    n: Fraction
    k: Fraction

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        object.__setattr__(self, "n", as_fraction(self.n))
        object.__setattr__(self, "k", as_fraction(self.k))
        if self.n < 3:
            raise ValueError(f"dimension n must be >= 3, got {self.n}")
        if self.k < 1:
            raise ValueError(f"order k must be >= 1, got {self.k}")

    @property
    def half_n(self) -> Fraction:
        return self.n / 2


@lru_cache(maxsize=4096)
def q_closed(spec: QFamilySpec, m: int) -> Poly:
    """Closed-form sum over the shifted products ``prod (y - j^2)`` / ``prod (y - j(j-1))``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if spec.family == "spinor":
        base, kind = spec.half_n + 1, "square"
    else:
        base, kind = spec.half_n, "triangular"
    out = Poly((), "y")
    for l in range(m + 1):
        coef = (
            (-1) ** (m - l)
            * pochhammer(base + l, m - l)
            * pochhammer(spec.k - m, m - l)
            * comb(m, l)
        )
        out = out + shifted_product(kind, l).scale(coef)
    return out


def recurrence_coefficients(spec: QFamilySpec, m: int) -> tuple[Fraction, Fraction]:
    """``(a_m, b_m)`` with ``q_{m+1} = (y - a_m) q_m - b_m q_{m-1}``."""
    n2, k = spec.half_n, spec.k
    if spec.family == "spinor":
        a = 2 * m * (k - m - n2 - Fraction(1, 2)) + n2 * (k - 1) + k
        b = m * (m - k) * (m + n2) * (m - k + n2 - 1)
    else:
        a = 2 * m * (k - m - n2) + n2 * (k - 1)
        b = m * (m - k) * (m - 1 + n2) * (m - 1 + n2 - k)
    return a, b


def q_recurrence(spec: QFamilySpec, mmax: int) -> list[Poly]:
    if mmax < 0:
        raise ValueError("mmax must be nonnegative")
    y = Poly.x("y")
    prev, cur = Poly((), "y"), Poly([Fraction(1)], "y")
    out = [cur]
    for m in range(mmax):
        a, b = recurrence_coefficients(spec, m)
        prev, cur = cur, (y - a) * cur - prev.scale(b)
        out.append(cur)
    return out


def identity_hahn_params(spec: QFamilySpec) -> HahnParams:
    if spec.k.denominator != 1:
        raise ParameterClash("the Hahn identification needs an integer k")
    if spec.family == "spinor":
        return HahnParams(spec.half_n, 1 - spec.half_n, int(spec.k))
    return HahnParams(spec.half_n - 1, 1 - spec.half_n, int(spec.k))


def dual_hahn_identity_sides(spec: QFamilySpec, m: int, yint: int):
    """Both sides of the dual Hahn identification at an integer lattice point.

    Spinor family: ``q~_m(y^2)`` against
    ``(-1)^m (n/2+1)_m (k-m)_m 3F2[-(y-1), -m, y+1; n/2+1, 1-k; 1]``;
    here ``y^2 = lam(y-1) + 1`` on the lattice with ``alpha+beta+1 = 2``.
    Function family: ``q_m(lam(y))`` with ``lam(y) = y(y+1)`` against
    ``(-1)^m (n/2)_m (k-m)_m 3F2[-y, -m, y+1; n/2, 1-k; 1]``.

    Returns ``(lhs, rhs, via_dual_hahn)``; the last entry is the right side
    recomputed through :func:`dual_hahn_R`, or ``None`` when the Hahn degree
    ``y-1`` (resp. ``y``) is outside ``[0, k-1]``.
    """
    if m < 0 or yint < 1:
        raise ValueError("need m >= 0 and yint >= 1")
    if m > spec.k - 1:
        raise ParameterClash(f"m = {m} exceeds k - 1 = {spec.k - 1}; 1-k lower parameter is unsafe")
    p = identity_hahn_params(spec)
    poly = q_closed(spec, m)
    if spec.family == "spinor":
        x = yint - 1
        arg = p.lam(x) + 1
        pre = pochhammer(spec.half_n + 1, m)
    else:
        x = yint
        arg = p.lam(x)
        pre = pochhammer(spec.half_n, m)
    pre *= (-1) ** m * pochhammer(spec.k - m, m)
    lhs = poly(arg)
    rhs = pre * hyp_pfq_terminating([-x, -m, x + p.alpha + p.beta + 1], [p.alpha + 1, 1 - p.bigN], 1)
    alt = pre * dual_hahn_R(m, x, p) if x <= p.bigN - 1 else None
    return lhs, rhs, alt


def dual_hahn_identity_check(spec: QFamilySpec, m: int, yint: int) -> bool:
    lhs, rhs, alt = dual_hahn_identity_sides(spec, m, yint)
    return lhs == rhs and (alt is None or alt == rhs)


def clear_caches() -> None:
    """Drop memoized polynomials (used before timing runs)."""
    q_closed.cache_clear()
    shifted_product.cache_clear()
