"""Operator polynomials in the Dirac symbol ``D``.

Coefficients live in ``Q[c][s] / (s^2 - c)`` where ``c = 2J/n`` is the
curvature parameter and ``s`` its formal square root.  An operator is a
:class:`~conformal_dirac.exact.Poly` in ``D`` whose coefficients are
:class:`CExt` values.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from .exact import Poly, as_fraction, format_poly

OperatorPoly = Poly
MonomialCombo = Dict[Tuple[int, ...], int]


def _cpoly(x) -> Poly:
    if isinstance(x, Poly):
        if x.var != "c" and not x.is_constant():
            raise TypeError(f"expected a polynomial in c, got Poly[{x.var}]")
        return Poly([as_fraction(v) for v in x.coeffs], "c")
    return Poly([as_fraction(x)], "c")


class CExt:
    """``a(c) + b(c) s`` with ``s^2 = c``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _cpoly(a))
        object.__setattr__(self, "b", _cpoly(b))

    def __setattr__(self, name, value):
        raise AttributeError("CExt is immutable")

    @staticmethod
    def _lift(x) -> Optional["CExt"]:
        if isinstance(x, CExt):
            return x
        if isinstance(x, (int, Fraction)) or (isinstance(x, Poly) and (x.var == "c" or x.is_constant())):
            return CExt(x)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CExt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CExt(-self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return CExt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        c = Poly.x("c")
        return CExt(self.a * o.a + self.b * o.b * c, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if not self.b and self.a.is_constant():
            return hash(self.a[0])
        return hash((self.a.coeffs, self.b.coeffs))

    def substitute(self, c0) -> "CExt":
        c0 = as_fraction(c0)
        return CExt(self.a(c0), self.b(c0))

    def __repr__(self):
        return f"CExt({self.a!r}, {self.b!r})"

    def __str__(self):
        parts = []
        if self.a:
            parts.append(format_poly(self.a))
        if self.b:
            parts.append(f"({format_poly(self.b)})*s")
        return " + ".join(parts) if parts else "0"


C = CExt(Poly.x("c"))
S = CExt(0, 1)


def dirac() -> OperatorPoly:
    return Poly([0, CExt(1)], "D")


def _curvature(c) -> CExt:
    return C if c is None else CExt(as_fraction(c))


def conformal_power(N: int, c=None) -> OperatorPoly:
    """``D prod_{j=1}^N (D^2 - j^2 c)``; formal in ``c`` unless a value is given."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    cc = _curvature(c)
    D = dirac()
    out = D
    for j in range(1, N + 1):
        out = out * (D * D - cc * (j * j))
    return out


def expand_linear_factors(N: int) -> OperatorPoly:
    """``prod_{j=1}^{2N+1} (D - (N-j+1) s)`` reduced modulo ``s^2 = c``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    D = dirac()
    out = Poly([CExt(1)], "D")
    for j in range(1, 2 * N + 2):
        out = out * (D - S * (N - j + 1))
    return out


def is_s_free(op: OperatorPoly) -> bool:
    return all(not CExt._lift(cf).b for cf in op.coeffs)


def substitute_c(op: OperatorPoly, c0) -> OperatorPoly:
    return op.map_coeffs(lambda cf: CExt._lift(cf).substitute(c0))


def operator_from_cpolys(coeffs) -> OperatorPoly:
    """Build an operator from a list of ``Q[c]`` coefficients (lowest ``D`` power first)."""
    return Poly([CExt(a) for a in coeffs], "D")


def m_sequence(N: int, c=None) -> OperatorPoly:
    """``M_{2N+1} = (-1)^N (N!)^2 c^N D``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    cc = _curvature(c)
    coef = CExt((-1) ** N * factorial(N) ** 2)
    for _ in range(N):
        coef = coef * cc
    return Poly([0, coef], "D")


def _absorb_curvature(mono: Tuple[int, ...], weight: int) -> Tuple[Tuple[int, ...], int]:
    """Fold a factor ``-c`` into one operator of ``mono``.

    ``-c M_1 = M_3`` is the preferred move.  Monomials without ``M_1`` use
    ``-c M_{2k+1} = M_{2k+3} / (k+1)^2`` on the lowest factor whose
    ``(k+1)^2`` divides the accumulated weight.
    """
    factors = list(mono)
    if 1 in factors:
        factors[factors.index(1)] = 3
        return tuple(sorted(factors)), weight
    for pos, idx in enumerate(factors):
        k = (idx - 1) // 2
        q, r = divmod(weight, (k + 1) ** 2)
        if r == 0:
            factors[pos] = idx + 2
            return tuple(sorted(factors)), q
    raise ArithmeticError(f"cannot absorb -c into {mono} with weight {weight} over the naturals")


def membership_decompose(N: int) -> MonomialCombo:
    """Express the conformal power as an N-linear combination of M-monomials.

    Keys are sorted tuples of odd indices (``(1, 1, 3)`` is ``M_1^2 M_3``).
    Built inductively from ``D_{2N+1} = D_{2N-1} M_1^2 - N^2 c D_{2N-1}``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    combo: Counter = Counter({(1,): 1})
    for step in range(1, N + 1):
        lead = (2 * step - 1,)
        nxt: Counter = Counter()
        for mono, cf in combo.items():
            nxt[tuple(sorted(mono + (1, 1)))] += cf
        for mono, cf in sorted(combo.items()):
            if mono == lead:
                continue
            new_mono, weight = _absorb_curvature(mono, step * step * cf)
            nxt[new_mono] += weight
        # -N^2 c M_{2N-1} = M_{2N+1}
        nxt[(2 * step + 1,)] += combo[lead]
        combo = nxt
    return dict(sorted(combo.items()))


def membership_expand(combo: MonomialCombo, c=None) -> OperatorPoly:
    out = Poly((), "D")
    cache: dict = {}
    for mono, cf in combo.items():
        term = Poly([CExt(cf)], "D")
        for idx in mono:
            if idx % 2 != 1 or idx < 1:
                raise ValueError(f"M-indices are odd and positive, got {idx}")
            if idx not in cache:
                cache[idx] = m_sequence((idx - 1) // 2, c)
            term = term * cache[idx]
        out = out + term
    return out


def render(op: OperatorPoly) -> str:
    return format_poly(op)
