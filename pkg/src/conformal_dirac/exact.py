"""Exact scalar, polynomial and rational-function arithmetic.

Scalars are :class:`fractions.Fraction`.  :class:`Poly` is a dense univariate
polynomial whose coefficients may live in any commutative ring that supports
``+ - *`` with Python ints (Fraction, :class:`RationalFunction`, another
:class:`Poly` in a different variable, ...).  Every value is immutable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Any, Iterable, Sequence


class VariableMismatch(TypeError):
    """Two polynomials in different variables were combined."""


class PoleError(ZeroDivisionError):
    def __init__(self, point, order: int):
        self.point = point
        self.order = order
        super().__init__(f"pole of order {order} at {point}")


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def pochhammer(a, l: int):
    """Rising factorial ``a (a+1) ... (a+l-1)``; ``1`` for ``l == 0``."""
    if l < 0:
        raise ValueError("pochhammer length must be nonnegative")
    result = Fraction(1) if not isinstance(a, (Poly, RationalFunction)) else 1
    for i in range(l):
        result = result * (a + i)
    return result


# coefficient tower: a lower rank acts as a scalar for a higher one
_RANK = {"lam": 0, "c": 1, "J": 1, "y": 2, "D": 2, "r": 3}


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Dense polynomial, coefficients stored lowest degree first."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str = "y"):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # constructors
    @classmethod
    def const(cls, c, var: str = "y") -> "Poly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "y", one=1) -> "Poly":
        return cls([0, one], var)

    @classmethod
    def monomial(cls, c, k: int, var: str = "y") -> "Poly":
        return cls([0] * k + [c], var)

    # basic accessors
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            if other.var != self.var:
                # constants are variable-agnostic
                return self.is_constant() and other.is_constant() and self[0] == other[0]
            return self.coeffs == other.coeffs
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self.is_constant() and self[0] == other

    def __hash__(self):
        if self.is_constant():
            return hash(self[0])
        return hash((self.var, self.coeffs))

    def _check(self, other: "Poly") -> None:
        if other.var != self.var:
            raise VariableMismatch(f"cannot combine Poly[{self.var}] with Poly[{other.var}]")

    def _role(self, other) -> str:
        """'same' (same variable), 'scalar' (coefficient-level) or 'outer'."""
        if isinstance(other, RationalFunction):
            return "outer" if self.var == RationalFunction.VAR else "scalar"
        if not isinstance(other, Poly):
            return "scalar"
        if other.var == self.var:
            return "same"
        mine, theirs = _RANK.get(self.var, 0), _RANK.get(other.var, 0)
        if theirs < mine:
            return "scalar"
        if theirs > mine:
            return "outer"
        if other.is_constant():
            return "scalar"
        raise VariableMismatch(f"cannot combine Poly[{self.var}] with Poly[{other.var}]")

    # ring operations
    def __add__(self, other):
        role = self._role(other)
        if role == "outer":
            return NotImplemented
        o = other if role == "same" else Poly([other], self.var)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        role = self._role(other)
        if role == "outer":
            return NotImplemented
        o = other if role == "same" else Poly([other], self.var)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] - o[i] for i in range(n)], self.var)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        role = self._role(other)
        if role == "outer":
            return NotImplemented
        if role == "scalar":
            return Poly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return Poly((), self.var)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out, self.var)

    def __rmul__(self, other):
        return Poly([other * c for c in self.coeffs], self.var)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Poly":
        return Poly([a * c for a in self.coeffs], self.var)

    def map_coeffs(self, f) -> "Poly":
        return Poly([f(a) for a in self.coeffs], self.var)

    def shift(self, k: int) -> "Poly":
        """Multiply by ``var**k``."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs), self.var)

    # evaluation / composition
    def __call__(self, point):
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        if isinstance(acc, int) and not isinstance(acc, bool):
            return Fraction(acc)
        return acc

    evaluate = __call__

    def compose(self, q: "Poly") -> "Poly":
        self._check(q)
        acc = Poly((), self.var)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    # division over a field of coefficients
    def __divmod__(self, other: "Poly"):
        self._check(other)
        o = other
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [0] * max(len(rem) - len(o.coeffs) + 1, 0)
        lead = o.lead
        for k in range(len(q) - 1, -1, -1):
            t = rem[k + len(o.coeffs) - 1]
            if _is_zero(t):
                continue
            t = t / lead
            q[k] = t
            for i, b in enumerate(o.coeffs):
                rem[k + i] = rem[k + i] - t * b
        return Poly(q, self.var), Poly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def monic(self) -> "Poly":
        if not self:
            return self
        lead = self.lead
        return Poly([c / lead for c in self.coeffs], self.var)

    def root_multiplicity(self, x0) -> int:
        """Order of vanishing at ``x0`` (``-1`` for the zero polynomial)."""
        if not self:
            return -1
        lin = Poly([-x0, 1], self.var)
        p, k = self, 0
        while True:
            q, r = divmod(p, lin)
            if r:
                return k
            p, k = q, k + 1

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        return format_poly(self)


_P = (1 << 61) - 1


def _mod_p(p: Poly):
    cs = p.coeffs
    if not all(isinstance(c, (int, Fraction)) for c in cs):
        return None
    out = []
    for c in cs:
        d = c.denominator
        if d == 1:
            out.append(c.numerator % _P)
            continue
        if d % _P == 0:
            return None
        out.append(c.numerator * pow(d, -1, _P) % _P)
    if out[-1] == 0:
        return None
    return out


def _coprime_mod_p(a: Poly, b: Poly) -> bool:
    """True only if ``a`` and ``b`` are certainly coprime over the rationals.

    With the leading coefficients nonzero mod p, the degree of the gcd mod p
    bounds the rational gcd degree from above.
    """
    u, v = _mod_p(a), _mod_p(b)
    if u is None or v is None:
        return False
    while v:
        inv = pow(v[-1], -1, _P)
        while len(u) >= len(v):
            t = u[-1] * inv % _P
            off = len(u) - len(v)
            for i, cv in enumerate(v):
                u[off + i] = (u[off + i] - t * cv) % _P
            while u and u[-1] == 0:
                u.pop()
        u, v = v, u
    return len(u) == 1


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over a coefficient field."""
    if not b:
        return a.monic()
    if not a:
        return b.monic()
    if a.degree == 0 or b.degree == 0:
        return Poly([Fraction(1)], a.var)
    if b.degree == 1 or a.degree == 1:
        lin, other = (b, a) if b.degree == 1 else (a, b)
        lin = lin.monic()
        return lin if not other(-lin[0]) else Poly([Fraction(1)], a.var)
    if _coprime_mod_p(a, b):
        return Poly([Fraction(1)], a.var)
    a, b = a.monic(), b.monic()
    while b:
        a, b = b, (a % b).monic()
    return a


def _scalar_view(c):
    """Collapse constant wrappers to a plain Fraction for display."""
    if isinstance(c, Poly) and c.is_constant():
        return _scalar_view(c[0])
    if isinstance(c, RationalFunction) and c.is_polynomial() and c.num.is_constant():
        return c.num[0] / c.den[0]
    if hasattr(c, "b") and hasattr(c, "a") and not c.b and c.a.is_constant():
        return c.a[0]
    return c


def _negative_monomial(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return c < 0
    if hasattr(c, "b") and hasattr(c, "a"):
        return not c.b and _negative_monomial(c.a)
    if isinstance(c, Poly):
        nz = [v for v in c.coeffs if v]
        return len(nz) == 1 and _negative_monomial(nz[0])
    return False


def _fmt_coeff(c) -> str:
    s = str(c)
    if not isinstance(c, (int, Fraction)) and any(t in s for t in (" + ", " - ", "/", "s")):
        return f"({s})"
    return s


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = _scalar_view(p.coeffs[k])
        if _is_zero(c):
            continue
        mono = "" if k == 0 else (p.var if k == 1 else f"{p.var}^{k}")
        neg = _negative_monomial(c)
        mag = -c if neg else c
        if mono and mag == 1:
            term = mono
        else:
            cs = _fmt_coeff(mag)
            term = f"{cs}*{mono}" if mono else cs
        parts.append(("-" if neg else "+", term))
    sign, first = parts[0]
    out = ("-" if sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


@lru_cache(maxsize=None)
def shifted_product(kind: str, l: int, var: str = "y") -> Poly:
    """``prod_{j=1}^l (y - j^2)`` for ``square``, ``prod (y - j(j-1))`` for ``triangular``."""
    if kind == "square":
        shift = lambda j: j * j
    elif kind == "triangular":
        shift = lambda j: j * (j - 1)
    else:
        raise ValueError(f"unknown shifted product kind {kind!r}")
    out = Poly([Fraction(1)], var)
    for j in range(1, l + 1):
        out = out * Poly([Fraction(-shift(j)), Fraction(1)], var)
    return out


def limit_form(num: Poly, den: Poly, x0):
    """Value of ``num/den`` at ``x0`` after cancelling shared factors ``(x - x0)``."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    kn, kd = num.root_multiplicity(x0), den.root_multiplicity(x0)
    if not num:
        return Fraction(0)
    lin = Poly([-x0, 1], num.var)
    k = min(kn, kd)
    if k:
        lk = lin ** k
        num, den = num.exact_div(lk), den.exact_div(lk)
    if kd > kn:
        raise PoleError(x0, kd - kn)
    return num(x0) / den(x0)


class RationalFunction:
    """Reduced quotient of two polynomials in ``lam`` over the rationals.

    The denominator is kept monic and coprime to the numerator, so equality is
    structural.
    """

    VAR = "lam"
    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1, _reduced: bool = False):
        num = self._lift(num)
        den = self._lift(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if not num:
                den = Poly([Fraction(1)], self.VAR)
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num, den = num // g, den // g
                lead = den.lead
                if lead != 1:
                    num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def _lift(cls, p) -> Poly:
        if isinstance(p, Poly):
            if p.var == cls.VAR and all(type(c) is Fraction for c in p.coeffs):
                return p
            if p.var != cls.VAR and not p.is_constant():
                raise VariableMismatch(f"rational functions live in {cls.VAR}, got {p.var}")
            return Poly([as_fraction(c) for c in p.coeffs], cls.VAR)
        return Poly([as_fraction(p)], cls.VAR)

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(Poly([0, 1], cls.VAR), 1, _reduced=True)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, Poly) and other.var not in (self.VAR,) and not other.is_constant():
            return False
        try:
            o = RationalFunction(other)
        except (TypeError, VariableMismatch):
            return NotImplemented
        return self == o

    def __hash__(self):
        if self.is_polynomial() and self.num.is_constant():
            return hash(self.num[0])
        return hash((self.num.coeffs, self.den.coeffs))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly) and other.var != self.VAR and not other.is_constant():
            return None
        if isinstance(other, (int, Fraction, Poly)):
            return RationalFunction(other, _reduced=not isinstance(other, Poly) or other.var == self.VAR)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.den.degree == 0 or self.den.degree == 0:
            if self.den.degree == 0:
                self, o = o, self
            # gcd(n + c d, d) = gcd(n, d) = 1 for a polynomial o = c
            num = self.num + o.num.scale(1 / o.den[0]) * self.den
            return RationalFunction(num, self.den, _reduced=True)
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den, _reduced=True)
        a, b = self.den // g, o.den // g
        num = self.num * b + o.num * a
        den = a * o.den
        h = poly_gcd(num, g)
        if h.degree > 0:
            num, den = num // h, den // h
        return RationalFunction(num, den, _reduced=True) if den.lead == 1 else RationalFunction(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if type(other) is Fraction or type(other) is int:
            if not other:
                return RationalFunction()
            return RationalFunction(self.num.scale(other), self.den, _reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_polynomial() and o.num.is_constant():
            c = o.num[0]
            if not c:
                return RationalFunction()
            return RationalFunction(self.num.scale(c), self.den, _reduced=True)
        g1 = poly_gcd(self.num, o.den) if self.num else None
        g2 = poly_gcd(o.num, self.den) if o.num else None
        if g1 is None or g2 is None:
            return RationalFunction()
        a, d2 = (self.num, o.den) if g1.degree == 0 else (self.num // g1, o.den // g1)
        b, d1 = (o.num, self.den) if g2.degree == 0 else (o.num // g2, self.den // g2)
        # cross-cancelled product of reduced fractions is reduced, monic dens stay monic
        return RationalFunction(a * b, d1 * d2, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("division by the zero rational function")
        lead = self.num.lead
        return RationalFunction(self.den.scale(1 / lead), self.num.scale(1 / lead), _reduced=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x0) -> Fraction:
        """Evaluate at a rational point; a pole raises :class:`PoleError`."""
        x0 = as_fraction(x0)
        d = self.den(x0)
        if d == 0:
            raise PoleError(x0, self.den.root_multiplicity(x0))
        return self.num(x0) / d

    evaluate = __call__

    def limit(self, x0) -> Fraction:
        return limit_form(self.num, self.den, as_fraction(x0))

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def display_parts(self) -> tuple[Poly, Poly]:
        """Numerator and denominator rescaled to coprime integer coefficients."""
        from math import gcd, lcm

        allc = self.num.coeffs + self.den.coeffs
        scale = Fraction(lcm(*(c.denominator for c in allc)))
        content = gcd(*(int(c * scale) for c in allc))
        scale /= content
        if self.den.lead < 0:
            scale = -scale
        return self.num.scale(scale), self.den.scale(scale)

    def __str__(self):
        if self.is_polynomial():
            return format_poly(self.num.scale(1 / self.den[0]))
        num, den = self.display_parts()
        n = format_poly(num)
        if not num.is_constant():
            n = f"({n})"
        d = format_poly(den)
        return f"{n}/({d})" if not den.is_constant() else f"{n}/{d}"


LAMBDA = RationalFunction.variable()


def rf_limit_coeffs(p: Poly, x0) -> Poly:
    """Apply :meth:`RationalFunction.limit` to every (possibly nested) coefficient."""

    def lim(c):
        if isinstance(c, RationalFunction):
            return c.limit(x0)
        if isinstance(c, Poly):
            return c.map_coeffs(lim)
        return c

    return p.map_coeffs(lim)


def product(items: Sequence, start=1):
    return prod(items, start=start)
