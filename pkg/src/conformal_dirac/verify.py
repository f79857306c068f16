"""Invariant suites run across parameter grids.

Each suite returns a :class:`Verdict`.  A failing verdict carries the first
counterexample (parameters plus both sides, rendered as strings) and the
number of failing cases.  ``quick`` trims the grids; ``full`` covers the
acceptance grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Optional

from . import special
from .exact import Poly, pochhammer, shifted_product
from .operators import (
    CExt,
    conformal_power,
    dirac,
    expand_linear_factors,
    is_s_free,
    m_sequence,
    membership_decompose,
    membership_expand,
    substitute_c,
)
from .pe_solver import (
    EinsteinParams,
    decouple_residuals,
    obstruction_extract,
    phi_recurrence_residuals,
    solution_operator,
    solution_operator_recurrence,
    solve_coupled,
    special_lambda,
)
from .series import conformal_factor_series, holographic_series, variation_series
from .sphere import apply_power_spectrally, kernel_lines, operator_value, sphere_spectrum

PROFILES = ("quick", "full")


@dataclass
class Verdict:
    name: str
    ok: bool
    cases: int
    failures: int = 0
    counterexample: Optional[dict] = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "cases": self.cases, "failures": self.failures}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass(frozen=True)
class Grid:
    q_n: tuple
    q_k: tuple
    yints: tuple
    power_n: tuple
    power_N: int
    formal_N: int
    sphere_n: tuple
    sphere_kmax: int
    sphere_N: int
    variation_order: int
    membership_N: int
    holographic_order: int
    system_n: tuple
    system_jmax: int
    samples: tuple = field(default=())


def J_samples(n: int) -> tuple:
    return (Fraction(n, 2), Fraction(1), Fraction(-2), Fraction(3, 7))


SERIES_SAMPLES = ((3, Fraction(3, 2)), (4, Fraction(-2)), (5, Fraction(3, 7)), (6, Fraction(0)), (7, Fraction(1)))

GRIDS = {
    "quick": Grid(
        q_n=tuple(range(3, 7)),
        q_k=tuple(range(1, 6)),
        yints=tuple(range(1, 6)),
        power_n=(3, 4, 5),
        power_N=4,
        formal_N=5,
        sphere_n=(3, 4, 5, 6),
        sphere_kmax=4,
        sphere_N=4,
        variation_order=11,
        membership_N=8,
        holographic_order=10,
        system_n=(3, 4, 5),
        system_jmax=9,
        samples=SERIES_SAMPLES[:3],
    ),
    "full": Grid(
        q_n=tuple(range(3, 13)),
        q_k=tuple(range(1, 9)),
        yints=tuple(range(1, 9)),
        power_n=tuple(range(3, 11)),
        power_N=6,
        formal_N=8,
        sphere_n=(3, 4, 5, 6),
        sphere_kmax=6,
        sphere_N=6,
        variation_order=17,
        membership_N=12,
        holographic_order=16,
        system_n=tuple(range(3, 11)),
        system_jmax=17,
        samples=SERIES_SAMPLES,
    ),
}


def _collect(name: str, cases: Iterable[Optional[dict]]) -> Verdict:
    """Consume ``cases``: ``None`` marks a passing case, a dict a counterexample."""
    total = failures = 0
    first = None
    for case in cases:
        total += 1
        if case is not None:
            failures += 1
            if first is None:
                first = case
    return Verdict(name, failures == 0, total, failures, first)


def _cmp(lhs, rhs, **params) -> Optional[dict]:
    if lhs == rhs:
        return None
    return {"params": {k: str(v) for k, v in params.items()}, "lhs": str(lhs), "rhs": str(rhs)}


def check_pochhammer(g: Grid) -> Iterator[Optional[dict]]:
    for N in range(g.membership_N + 1):
        yield _cmp(pochhammer(Fraction(-N), N), (-1) ** N * factorial(N), identity="(-N)_N", N=N)
    for l in range(7):
        for yv in range(-4, 9):
            y = Fraction(yv)
            sq = (-1) ** l * pochhammer(1 - y, l) * pochhammer(y + 1, l)
            yield _cmp(shifted_product("square", l)(y * y), sq, identity="square", l=l, y=y)
            tri = pochhammer(-y, l) * pochhammer(1 + y, l) * (-1) ** l
            yield _cmp(shifted_product("triangular", l)(y * (y + 1)), tri, identity="triangular", l=l, y=y)


def check_q_families(g: Grid) -> Iterator[Optional[dict]]:
    for family in special.FAMILIES:
        for n in g.q_n:
            for k in g.q_k:
                spec = special.QFamilySpec(family, n, k)
                rec = special.q_recurrence(spec, k)
                for m in range(k + 1):
                    closed = special.q_closed(spec, m)
                    yield _cmp(closed, rec[m], family=family, n=n, k=k, m=m)
                    if closed.degree != m or closed.lead != 1:
                        yield {"params": {"family": family, "n": str(n), "k": str(k), "m": str(m)},
                               "lhs": str(closed), "rhs": "monic of degree m"}
                if family == "spinor":
                    yield _cmp(rec[k], shifted_product("square", k), family=family, n=n, k=k, m=k)


def check_dual_hahn(g: Grid) -> Iterator[Optional[dict]]:
    for family in special.FAMILIES:
        for n in g.q_n:
            for k in g.q_k:
                spec = special.QFamilySpec(family, n, k)
                for m in range(k):
                    for yint in g.yints:
                        lhs, rhs, alt = special.dual_hahn_identity_sides(spec, m, yint)
                        res = _cmp(lhs, rhs, family=family, n=n, k=k, m=m, yint=yint)
                        if res is None and alt is not None:
                            res = _cmp(alt, rhs, family=family, n=n, k=k, m=m, yint=yint, side="dual Hahn")
                        yield res


def check_product_formula(g: Grid) -> Iterator[Optional[dict]]:
    linear = [expand_linear_factors(N) for N in range(max(g.power_N, g.formal_N) + 1)]
    for N, op in enumerate(linear):
        if not is_s_free(op):
            yield {"params": {"N": str(N)}, "lhs": str(op), "rhs": "free of s"}
    for n in g.power_n:
        for J in J_samples(n):
            params = EinsteinParams(n, J)
            state = solve_coupled(params, 2 * g.power_N + 1)
            c = params.c
            for N in range(g.power_N + 1):
                derived = obstruction_extract(params, N, state)
                product = conformal_power(N, c)
                yield _cmp(derived, product, n=n, J=J, N=N, pair="obstruction/product")
                yield _cmp(product, substitute_c(linear[N], c), n=n, J=J, N=N, pair="product/linear factors")
        formal = EinsteinParams(n, None)
        state = solve_coupled(formal, 2 * g.formal_N + 1)
        for N in range(g.formal_N + 1):
            derived = obstruction_extract(formal, N, state)
            product = conformal_power(N)
            yield _cmp(derived, product, n=n, J="formal", N=N, pair="obstruction/product")
            yield _cmp(product, linear[N], n=n, J="formal", N=N, pair="product/linear factors")


def check_solution_operator(g: Grid) -> Iterator[Optional[dict]]:
    lmax = g.power_N
    for n in g.power_n[:3]:
        rec = solution_operator_recurrence(n, lmax)
        for J in (Fraction(n, 2), Fraction(-2)):
            params = EinsteinParams(n, J)
            state = solve_coupled(params, 2 * lmax + 1)
            for l in range(lmax + 1):
                yield _cmp(solution_operator(params, l, state), rec[l], n=n, J=J, l=l, route="phi/recurrence")
        for N in range(1, lmax + 1):
            ref = special.q_recurrence(special.QFamilySpec("spinor", n, N), N)
            lam0 = special_lambda(N)
            for m in range(N + 1):
                sub = Poly([cf(lam0) for cf in rec[m].coeffs], "y")
                yield _cmp(sub, ref[m], n=n, N=N, m=m, route="lam=-(2N+1)/2 against q-family k=N")


def check_sphere(g: Grid) -> Iterator[Optional[dict]]:
    D = dirac()
    for n in g.sphere_n:
        params = EinsteinParams(n, Fraction(n, 2))
        state = solve_coupled(params, 2 * g.sphere_N + 1)
        lines = sphere_spectrum(n, g.sphere_kmax)
        for N in range(g.sphere_N + 1):
            factored = Poly([CExt(1)], "D")
            for j in range(-N, N + 1):
                factored = factored * (D - CExt(j))
            derived = obstruction_extract(params, N, state)
            yield _cmp(derived, factored, n=n, N=N, check="derived operator")
            op = conformal_power(N, 1)
            values = apply_power_spectrally(N, lines, n)
            for v in values:
                yield _cmp(operator_value(op, v.eigenvalue_in), v.eigenvalue_out,
                           n=n, N=N, k=v.line.k, sign=v.line.sign, check="spectral")
                yield _cmp(operator_value(op, -v.eigenvalue_in), -v.eigenvalue_out,
                           n=n, N=N, k=v.line.k, sign=v.line.sign, check="odd symmetry")
            kernel = {(v.line.k, v.line.sign) for v in kernel_lines(values)}
            expected = {
                (ln.k, ln.sign) for ln in lines if n % 2 == 0 and Fraction(n, 2) + ln.k <= N
            }
            yield _cmp(sorted(kernel), sorted(expected), n=n, N=N, check="kernel")


def check_variation(g: Grid) -> Iterator[Optional[dict]]:
    order = g.variation_order
    D = dirac()
    for n, J in g.samples:
        v = variation_series(order, J, n)
        for i in range(order + 1):
            fam = v.dirac_family.derivative_at_zero(i)
            fr = v.f_r.derivative_at_zero(i)
            if i % 2:
                yield _cmp(fam, 0, n=n, J=J, derivative=i, series="Dirac family")
                yield _cmp(fr, 0, n=n, J=J, derivative=i, series="f_r")
            else:
                l = i // 2
                yield _cmp(fam, D * CExt(factorial(i) * (J / (2 * n)) ** l), n=n, J=J, derivative=i,
                           series="Dirac family")
                yield _cmp(fr, Fraction(factorial(i), 2 ** l) * (J / n) ** l, n=n, J=J, derivative=i, series="f_r")
        yield _cmp(v.mean_curvature[1], J / n, n=n, J=J, series="H_r, r^1")
        yield _cmp(v.dirac_family, v.f_r * D, n=n, J=J, series="Dirac family = f_r D")
        base = conformal_factor_series(order, J, n)
        yield _cmp(v.h_r, base * base, n=n, J=J, series="h_r")
        yield _cmp(v.h_r.coeffs[:5], (1, 0, -J / n, 0, (J / (2 * n)) ** 2), n=n, J=J, series="h_r coefficients")


def check_membership(g: Grid) -> Iterator[Optional[dict]]:
    for N in range(g.membership_N + 1):
        combo = membership_decompose(N)
        bad = [(m, c) for m, c in combo.items() if not (isinstance(c, int) and c >= 1)]
        if bad:
            yield {"params": {"N": str(N)}, "lhs": str(bad), "rhs": "positive integer coefficients"}
        else:
            yield None
        yield _cmp(combo.get((2 * N + 1,)), 1, N=N, check="top coefficient")
        yield _cmp(membership_expand(combo), conformal_power(N), N=N, check="round trip")
        if N >= 1:
            yield _cmp(m_sequence(N), m_sequence(N - 1) * (CExt(Poly.x("c")) * (-N * N)), N=N, check="M-recursion")


def check_holographic(g: Grid) -> Iterator[Optional[dict]]:
    D = dirac()
    for n, J in g.samples:
        for order in range(g.holographic_order + 1):
            h = holographic_series(order, J, n)
            prod = h * conformal_factor_series(order, J, n)
            yield _cmp(prod.coeffs, (D,) + (0,) * order, n=n, J=J, order=order, check="H(r)(1 - J r^2/2n) = D")
        h = holographic_series(g.holographic_order, J, n)
        for i, cf in enumerate(h.coeffs):
            want = D * CExt((J / (2 * n)) ** (i // 2)) if i % 2 == 0 else 0
            yield _cmp(cf, want, n=n, J=J, power=i, check="geometric coefficient")


def check_system(g: Grid) -> Iterator[Optional[dict]]:
    jmax = g.system_jmax
    for n in g.system_n:
        for J in J_samples(n) + (Fraction(0),):
            state = solve_coupled(EinsteinParams(n, J), jmax)
            tag = {"n": str(n), "J": str(J), "jmax": str(jmax)}
            yield None if state.parity_ok() else {"params": tag, "lhs": "theta parity", "rhs": "even/odd split"}
            bad = next(decouple_residuals(state), None)
            yield None if bad is None else {"params": {**tag, "j": str(bad["j"]), "branch": bad["branch"]},
                                            "lhs": bad["lhs"], "rhs": bad["rhs"]}
            bad = next(phi_recurrence_residuals(state, (jmax - 1) // 2), None)
            yield None if bad is None else {"params": {**tag, "l": str(bad["l"])}, "lhs": bad["lhs"], "rhs": bad["rhs"]}


SUITES: dict[str, Callable[[Grid], Iterator[Optional[dict]]]] = {
    "pochhammer_identities": check_pochhammer,
    "q_family_routes": check_q_families,
    "dual_hahn_identification": check_dual_hahn,
    "product_formula": check_product_formula,
    "solution_operator_routes": check_solution_operator,
    "sphere_corollary": check_sphere,
    "dirac_variation": check_variation,
    "membership": check_membership,
    "holographic_series": check_holographic,
    "system_structure": check_system,
}


def run_suite(name: str, profile: str = "quick") -> Verdict:
    if profile not in GRIDS:
        raise ValueError(f"profile must be one of {PROFILES}")
    try:
        return _collect(name, SUITES[name](GRIDS[profile]))
    except ArithmeticError as exc:
        return Verdict(name, False, 0, 1, {"params": {"profile": profile}, "lhs": type(exc).__name__, "rhs": str(exc)})


def verify_all(profile: str = "quick") -> list[Verdict]:
    return [run_suite(name, profile) for name in SUITES]
