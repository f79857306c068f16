"""Conformal Dirac powers on the unit round sphere, evaluated on the spectrum.

The default spectrum is the classical one for the unit sphere ``S^n``:
eigenvalues ``+-(n/2 + k)`` with multiplicity ``2^floor(n/2) binom(k+n-1, k)``.
Callers may supply their own spectrum instead (see :func:`parse_spectrum`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Optional


class SpectrumFormatError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


def default_multiplicity(n: int, k: int) -> int:
    return 2 ** (n // 2) * comb(k + n - 1, k)


@dataclass(frozen=True)
class SpectrumLine:
    k: int
    sign: int
    eigenvalue: Fraction
    multiplicity: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.k < 0:
            raise ValueError("level k must be nonnegative")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def validate_for(self, n: int) -> None:
        if abs(self.eigenvalue) < Fraction(n, 2):
            raise ValueError(f"|eigenvalue| {abs(self.eigenvalue)} is below n/2 = {Fraction(n, 2)}")


def sphere_spectrum(n: int, kmax: int, multiplicity=default_multiplicity) -> list[SpectrumLine]:
    if n < 2:
        raise ValueError("sphere dimension must be >= 2")
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    lines = []
    for k in range(kmax + 1):
        mu = Fraction(n, 2) + k
        for sign in (1, -1):
            lines.append(SpectrumLine(k, sign, sign * mu, multiplicity(n, k)))
    return lines


class SpectralValue(NamedTuple):
    line: SpectrumLine
    eigenvalue_in: Fraction
    eigenvalue_out: Fraction
    multiplicity: int


def factored_value(N: int, lam) -> Fraction:
    """``prod_{j=-N}^{N} (lam - j)``."""
    out = Fraction(1)
    for j in range(-N, N + 1):
        out *= lam - j
    return out


def apply_power_spectrally(N: int, lines: Iterable[SpectrumLine], n: int) -> list[SpectralValue]:
    """Eigenvalues of the conformal power ``(D-N)...D...(D+N)`` on each spectral line.

    On the unit sphere ``J = n/2`` so the curvature parameter is ``c = 1``.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    out = []
    for line in lines:
        line.validate_for(n)
        out.append(SpectralValue(line, line.eigenvalue, factored_value(N, line.eigenvalue), line.multiplicity))
    return out


def kernel_lines(values: Iterable[SpectralValue]) -> list[SpectralValue]:
    return [v for v in values if v.eigenvalue_out == 0]


def parse_spectrum(text: str, n: Optional[int] = None) -> list[SpectrumLine]:
    """Parse ``k sign eigenvalue multiplicity`` records; ``#`` starts a comment.

    ``sign`` is ``+``/``-``/``+1``/``-1``; the eigenvalue is an exact fraction.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        fields = []
        pos = 0
        for tok in body.split():
            col = body.index(tok, pos)
            pos = col + len(tok)
            fields.append((tok, col + 1))
        if len(fields) != 4:
            col = fields[min(len(fields), 4)][1] if len(fields) > 4 else len(body.rstrip()) + 1
            raise SpectrumFormatError(lineno, col, f"expected 4 fields (k sign eigenvalue multiplicity), got {len(fields)}")
        (k_s, k_c), (s_s, s_c), (e_s, e_c), (m_s, m_c) = fields
        try:
            k = int(k_s)
        except ValueError:
            raise SpectrumFormatError(lineno, k_c, f"level must be an integer, got {k_s!r}") from None
        if k < 0:
            raise SpectrumFormatError(lineno, k_c, "level must be nonnegative")
        if s_s in ("+", "+1", "1"):
            sign = 1
        elif s_s in ("-", "-1"):
            sign = -1
        else:
            raise SpectrumFormatError(lineno, s_c, f"sign must be + or -, got {s_s!r}")
        try:
            ev = Fraction(e_s)
        except (ValueError, ZeroDivisionError):
            raise SpectrumFormatError(lineno, e_c, f"eigenvalue must be an exact fraction, got {e_s!r}") from None
        if (ev > 0) != (sign > 0) or ev == 0:
            raise SpectrumFormatError(lineno, e_c, f"eigenvalue {e_s} does not carry sign {s_s}")
        if n is not None and abs(ev) < Fraction(n, 2):
            raise SpectrumFormatError(lineno, e_c, f"|eigenvalue| must be >= n/2 = {Fraction(n, 2)}")
        try:
            mult = int(m_s)
        except ValueError:
            raise SpectrumFormatError(lineno, m_c, f"multiplicity must be an integer, got {m_s!r}") from None
        if mult < 1:
            raise SpectrumFormatError(lineno, m_c, "multiplicity must be positive")
        lines.append(SpectrumLine(k, sign, ev, mult))
    return lines


def format_spectrum(lines: Iterable[SpectrumLine]) -> str:
    out = ["# k sign eigenvalue multiplicity"]
    for ln in lines:
        out.append(f"{ln.k} {'+' if ln.sign > 0 else '-'} {ln.eigenvalue} {ln.multiplicity}")
    return "\n".join(out) + "\n"


def operator_value(op, lam) -> Fraction:
    """Evaluate an operator polynomial with numeric ``s``-free coefficients at ``D = lam``."""
    val = op(Fraction(lam))
    if hasattr(val, "b"):
        if val.b or not val.a.is_constant():
            raise ValueError("operator still depends on the curvature parameter")
        return Fraction(val.a[0])
    return Fraction(val)
