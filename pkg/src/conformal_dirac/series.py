"""Truncated power series in ``r``: the Poincare-Einstein family, its Dirac
variations and the holographic deformation of the Dirac operator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .exact import as_fraction
from .operators import CExt, OperatorPoly, dirac, m_sequence


class FormalSeries:
    """``sum_{i <= order} a_i r^i`` with all products truncated at ``order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, order: int):
        cs = list(coeffs)[: order + 1]
        cs += [0] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FormalSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def _other(self, other) -> "FormalSeries":
        if isinstance(other, FormalSeries):
            return other
        return FormalSeries([other], self.order)

    def __add__(self, other):
        o = self._other(other)
        order = min(self.order, o.order)
        return FormalSeries([self[i] + o[i] for i in range(order + 1)], order)

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return FormalSeries([a * other for a in self.coeffs], self.order)
        order = min(self.order, other.order)
        out = []
        for i in range(order + 1):
            acc = 0
            for k in range(i + 1):
                a, b = self[k], other[i - k]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return FormalSeries(out, order)

    def __rmul__(self, other):
        return FormalSeries([other * a for a in self.coeffs], self.order)

    def inverse(self) -> "FormalSeries":
        """Multiplicative inverse for a series with invertible rational constant term."""
        a0 = self[0]
        if not a0:
            raise ZeroDivisionError("constant term is zero")
        inv0 = 1 / as_fraction(a0)
        out = [inv0]
        for i in range(1, self.order + 1):
            acc = sum((self[k] * out[i - k] for k in range(1, i + 1)), Fraction(0))
            out.append(-acc * inv0)
        return FormalSeries(out, self.order)

    def derivative_at_zero(self, i: int):
        """``d^i/dr^i`` at ``r = 0``, i.e. ``i! a_i``."""
        return self[i] * factorial(i)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"FormalSeries({list(self.coeffs)!r}, order={self.order})"


def conformal_factor_series(order: int, J, n: int) -> FormalSeries:
    """``1 - (J/2n) r^2``."""
    J = as_fraction(J)
    return FormalSeries([Fraction(1), 0, -J / (2 * n)], order)


@dataclass(frozen=True)
class VariationSeries:
    f_r: FormalSeries
    h_r: FormalSeries
    dirac_family: FormalSeries
    mean_curvature: FormalSeries


def variation_series(order: int, J, n: int) -> VariationSeries:
    """Scalar/operator series of the Einstein Poincare-Einstein family.

    ``h_r = (1 - J r^2/2n)^2 h``, ``f_r = (1 - J r^2/2n)^{-1}``, the Dirac
    family ``f_r D`` and ``H_r = (J/n) r f_r``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    J = as_fraction(J)
    base = conformal_factor_series(order, J, n)
    f_r = base.inverse()
    h_r = base * base
    family = f_r * dirac()
    r_series = FormalSeries([0, J / n], order)
    H_r = r_series * f_r
    return VariationSeries(f_r, h_r, family, H_r)


def holographic_series(order: int, J, n: int) -> FormalSeries:
    """``sum_N (-1)^N / (N!)^2 (r/2)^{2N} M_{2N+1}`` with ``c = 2J/n``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    c = 2 * as_fraction(J) / n
    coeffs: list = [0] * (order + 1)
    for N in range(order // 2 + 1):
        w = Fraction((-1) ** N, factorial(N) ** 2 * 4 ** N)
        coeffs[2 * N] = m_sequence(N, c) * CExt(w)
    return FormalSeries(coeffs, order)


def constant_operator_series(op: OperatorPoly, order: int) -> FormalSeries:
    return FormalSeries([op], order)
