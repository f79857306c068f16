"""Command-line front end.

Every subcommand builds a :class:`RunReport` and prints it either as a
human table or as one canonical JSON document.  Exit codes: 0 success,
1 a verification verdict is false, 2 bad flags, 3 unreadable or malformed
input file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Optional

from . import special
from .exact import Poly, RationalFunction, _scalar_view
from .operators import (
    CExt,
    conformal_power,
    dirac,
    expand_linear_factors,
    m_sequence,
    membership_decompose,
    membership_expand,
    substitute_c,
)
from .pe_solver import EinsteinParams, obstruction_extract, obstruction_via_solution_operator
from .series import conformal_factor_series, holographic_series, variation_series
from .sphere import (
    SpectrumFormatError,
    apply_power_spectrally,
    kernel_lines,
    operator_value,
    parse_spectrum,
    sphere_spectrum,
)
from .verify import PROFILES, verify_all

FORMAT_ENV = "CONFORMAL_DIRAC_FORMAT"
FORMATS = ("table", "json")

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputFileError(Exception):
    pass


# ---------------------------------------------------------------- encoding


def encode(value: Any) -> Any:
    """JSON-ready form: exact numbers become ``"p/q"`` strings, never floats."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    if isinstance(value, (RationalFunction, CExt)) or (isinstance(value, Poly) and value.is_constant()):
        flat = _scalar_view(value)
        if flat is not value and isinstance(flat, (int, Fraction)):
            return str(Fraction(flat))
        if isinstance(value, RationalFunction):
            return {"num": encode(value.num.coeffs), "den": encode(value.den.coeffs), "text": str(value)}
        if isinstance(value, CExt):
            if not value.b:
                return encode(value.a)
            return {"rational": encode(value.a), "sqrt_c": encode(value.b), "text": str(value)}
    if isinstance(value, Poly):
        return {"var": value.var, "coeffs": [encode(c) for c in value.coeffs], "text": str(value)}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


@dataclass
class RunReport:
    command: str
    params: dict
    verdicts: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    def verdict(self, name: str, ok: bool, counterexample: Optional[dict] = None) -> bool:
        entry = {"name": name, "ok": bool(ok)}
        if not ok:
            entry["counterexample"] = counterexample or {"params": dict(self.params)}
        self.verdicts.append(entry)
        return ok

    def compare(self, name: str, lhs, rhs, **extra) -> bool:
        ok = lhs == rhs
        cx = None if ok else {"params": {**self.params, **{k: str(v) for k, v in extra.items()}},
                              "lhs": str(lhs), "rhs": str(rhs)}
        return self.verdict(name, ok, cx)

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def as_dict(self, canonical: bool = False) -> dict:
        out = {
            "command": self.command,
            "params": encode(self.params),
            "verdicts": encode(self.verdicts),
            "payload": encode(self.payload),
        }
        if not canonical:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def render_json(report: RunReport) -> str:
    return json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"


def _text(value) -> str:
    enc = encode(value)
    if isinstance(enc, dict) and "text" in enc:
        return enc["text"]
    return str(enc) if not isinstance(enc, str) else enc


def render_table(report: RunReport) -> str:
    lines = [f"command: {report.command}"]
    for k, v in report.params.items():
        lines.append(f"  {k} = {v}")
    for key, value in report.payload.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            cols = list(value[0].keys())
            rows = [[_text(r.get(c, "")) for c in cols] for r in value]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(f"{key}:")
            lines.append("  " + "  ".join(c.rjust(w) for c, w in zip(cols, widths)))
            for r in rows:
                lines.append("  " + "  ".join(x.rjust(w) for x, w in zip(r, widths)))
        elif isinstance(value, list):
            lines.append(f"{key}:")
            for i, item in enumerate(value):
                lines.append(f"  [{i}] {_text(item)}")
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                if isinstance(v, dict):
                    lines.append(f"  {k}: " + ", ".join(f"{a}={_text(b)}" for a, b in v.items()))
                else:
                    lines.append(f"  {k}: {_text(v)}")
        else:
            lines.append(f"{key}: {_text(value)}")
    for v in report.verdicts:
        lines.append(f"[{'PASS' if v['ok'] else 'FAIL'}] {v['name']}")
        if not v["ok"]:
            lines.append("    counterexample: " + json.dumps(encode(v["counterexample"]), sort_keys=True))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- flag parsing


def fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3/7, got {text!r}") from None


def curvature_arg(text: str) -> Optional[Fraction]:
    if text == "formal":
        return None
    return fraction_arg(text)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


# ---------------------------------------------------------------- commands


def cmd_qtilde(args) -> RunReport:
    _require(args.n >= 3, "--n must be >= 3")
    _require(args.k >= 1, "--k must be >= 1")
    _require(args.mmax >= 0, "--mmax must be >= 0")
    spec = special.QFamilySpec(args.family, args.n, args.k)
    rep = RunReport("qtilde", {"family": args.family, "n": args.n, "k": args.k, "mmax": args.mmax})
    closed = [special.q_closed(spec, m) for m in range(args.mmax + 1)]
    rec = special.q_recurrence(spec, args.mmax)
    rep.payload["closed_form"] = closed
    rep.payload["recurrence"] = rec
    bad = [m for m in range(args.mmax + 1) if closed[m] != rec[m]]
    if bad:
        m = bad[0]
        rep.compare("closed_form_equals_recurrence", closed[m], rec[m], m=m)
    else:
        rep.verdict("closed_form_equals_recurrence", True)
    return rep


def cmd_derive_power(args) -> RunReport:
    _require(args.n >= 3, "--n must be >= 3")
    _require(args.N >= 0, "--N must be >= 0")
    params = EinsteinParams(args.n, args.J)
    rep = RunReport("derive-power", {"n": args.n, "J": "formal" if args.J is None else args.J, "N": args.N})
    c = params.c
    derived = obstruction_extract(params, args.N)
    product = conformal_power(args.N, c)
    linear = expand_linear_factors(args.N)
    rep.payload["c"] = "formal" if c is None else c
    rep.payload["obstruction"] = derived
    rep.payload["product_formula"] = product
    rep.payload["linear_factors"] = linear
    if c is not None:
        rep.payload["linear_factors_at_c"] = substitute_c(linear, c)
    rep.compare("obstruction_equals_product", derived, product)
    rep.compare("product_equals_linear_factors", product, linear if c is None else substitute_c(linear, c))
    if not params.flat:
        rep.compare("solution_operator_route", obstruction_via_solution_operator(params, args.N), product)
    return rep


def _read_spectrum(path: str, n: int):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputFileError(f"{path}: {exc.strerror}") from None
    try:
        return parse_spectrum(text, n)
    except SpectrumFormatError as exc:
        raise InputFileError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def cmd_sphere(args) -> RunReport:
    _require(args.n >= 2, "--n must be >= 2")
    _require(args.N >= 0, "--N must be >= 0")
    _require(args.kmax >= 0, "--kmax must be >= 0")
    params = {"n": args.n, "N": args.N, "kmax": args.kmax}
    if args.spectrum_file:
        lines = [ln for ln in _read_spectrum(args.spectrum_file, args.n) if ln.k <= args.kmax]
        params["spectrum"] = "file"
    else:
        lines = sphere_spectrum(args.n, args.kmax)
        params["spectrum"] = "default"
    rep = RunReport("sphere", params)
    values = apply_power_spectrally(args.N, lines, args.n)
    rep.payload["lines"] = [
        {"k": v.line.k, "sign": v.line.sign, "eigenvalue": v.eigenvalue_in, "image": v.eigenvalue_out,
         "multiplicity": v.multiplicity}
        for v in values
    ]
    kernel = kernel_lines(values)
    rep.payload["kernel"] = [{"k": v.line.k, "sign": v.line.sign, "multiplicity": v.multiplicity} for v in kernel]
    rep.payload["kernel_dimension"] = sum(v.multiplicity for v in kernel)

    op = conformal_power(args.N, 1)
    factored = Poly([CExt(1)], "D")
    for j in range(-args.N, args.N + 1):
        factored = factored * (dirac() - CExt(j))
    rep.payload["operator"] = op
    rep.compare("product_equals_factored", op, factored)
    if args.n >= 3:
        rep.compare("obstruction_equals_factored", obstruction_extract(EinsteinParams(args.n, Fraction(args.n, 2)), args.N), factored)
    mismatch = [v for v in values if operator_value(op, v.eigenvalue_in) != v.eigenvalue_out]
    if mismatch:
        v = mismatch[0]
        rep.compare("spectral_matches_operator", operator_value(op, v.eigenvalue_in), v.eigenvalue_out, k=v.line.k)
    else:
        rep.verdict("spectral_matches_operator", True)
    rep.verdict("odd_symmetry", all(operator_value(op, -v.eigenvalue_in) == -v.eigenvalue_out for v in values))
    if not args.spectrum_file:
        expected = sorted((ln.k, ln.sign) for ln in lines if args.n % 2 == 0 and Fraction(args.n, 2) + ln.k <= args.N)
        rep.compare("kernel_characterization", sorted((v.line.k, v.line.sign) for v in kernel), expected)
    return rep


def cmd_verify_all(args) -> RunReport:
    rep = RunReport("verify-all", {"profile": args.profile})
    suites = {}
    for v in verify_all(args.profile):
        suites[v.name] = {"cases": v.cases, "failures": v.failures}
        rep.verdict(v.name, v.ok, v.counterexample)
    rep.payload["suites"] = suites
    return rep


def cmd_holographic(args) -> RunReport:
    _require(args.n >= 3, "--n must be >= 3")
    _require(args.order >= 0, "--order must be >= 0")
    rep = RunReport("holographic", {"order": args.order, "J": args.J, "n": args.n})
    h = holographic_series(args.order, args.J, args.n)
    rep.payload["coefficients"] = list(h.coeffs)
    prod = h * conformal_factor_series(args.order, args.J, args.n)
    rep.compare("times_conformal_factor_is_D", list(prod.coeffs), [dirac()] + [0] * args.order)
    want = [dirac() * CExt((args.J / (2 * args.n)) ** (i // 2)) if i % 2 == 0 else 0 for i in range(args.order + 1)]
    rep.compare("geometric_coefficients", list(h.coeffs), want)
    return rep


def cmd_membership(args) -> RunReport:
    _require(args.N >= 0, "--N must be >= 0")
    rep = RunReport("membership", {"N": args.N})
    combo = membership_decompose(args.N)
    rep.payload["monomials"] = [
        {"monomial": " ".join(f"M{i}" for i in mono), "coefficient": cf} for mono, cf in combo.items()
    ]
    rep.payload["product_formula"] = conformal_power(args.N)
    rep.verdict("natural_coefficients", all(isinstance(cf, int) and cf >= 1 for cf in combo.values()))
    rep.compare("top_coefficient_is_one", combo.get((2 * args.N + 1,)), 1)
    rep.compare("round_trip", membership_expand(combo), conformal_power(args.N))
    if args.N >= 1:
        rep.compare("m_recursion", m_sequence(args.N),
                    m_sequence(args.N - 1) * (CExt(Poly.x("c")) * (-args.N * args.N)))
    return rep


def cmd_dual_hahn(args) -> RunReport:
    _require(args.n >= 3, "--n must be >= 3")
    _require(args.k >= 1, "--k must be >= 1")
    _require(args.m >= 0, "--m must be >= 0")
    _require(args.m <= args.k - 1, "--m must be <= k - 1 (the 1-k lower parameter vanishes otherwise)")
    yints = [args.yint] if args.yint is not None else list(range(1, 9))
    _require(all(y >= 1 for y in yints), "--yint must be >= 1")
    spec = special.QFamilySpec(args.family, args.n, args.k)
    rep = RunReport("dual-hahn", {"family": args.family, "n": args.n, "k": args.k, "m": args.m,
                                  "yint": "1..8" if args.yint is None else args.yint})
    rows = []
    first_bad = None
    for y in yints:
        lhs, rhs, alt = special.dual_hahn_identity_sides(spec, args.m, y)
        rows.append({"yint": y, "q_side": lhs, "hypergeometric_side": rhs,
                     "dual_hahn_side": "-" if alt is None else alt})
        if first_bad is None and not (lhs == rhs and (alt is None or alt == rhs)):
            first_bad = (y, lhs, rhs)
    rep.payload["rows"] = rows
    if first_bad:
        rep.compare("identity_holds", first_bad[1], first_bad[2], yint=first_bad[0])
    else:
        rep.verdict("identity_holds", True)
    return rep


def cmd_variation(args) -> RunReport:
    _require(args.n >= 3, "--n must be >= 3")
    _require(args.order >= 0, "--order must be >= 0")
    J, n = args.J, args.n
    rep = RunReport("variation", {"order": args.order, "J": J, "n": n})
    v = variation_series(args.order, J, n)
    D = dirac()
    rows = []
    fam_ok = f_ok = True
    for i in range(args.order + 1):
        fam, fr = v.dirac_family.derivative_at_zero(i), v.f_r.derivative_at_zero(i)
        rows.append({"i": i, "dirac_family": fam, "f_r": fr, "h_r": v.h_r[i], "H_r": v.mean_curvature[i]})
        l = i // 2
        want_fam = 0 if i % 2 else D * CExt(factorial(i) * (J / (2 * n)) ** l)
        want_f = 0 if i % 2 else Fraction(factorial(i), 2 ** l) * (J / n) ** l
        fam_ok = fam_ok and fam == want_fam
        f_ok = f_ok and fr == want_f
    rep.payload["derivatives"] = rows
    rep.verdict("dirac_family_derivatives", fam_ok)
    rep.verdict("f_r_derivatives", f_ok)
    if args.order >= 1:
        rep.compare("H_r_linear_coefficient", v.mean_curvature[1], J / n)
    base = conformal_factor_series(args.order, J, n)
    rep.compare("h_r_is_square_of_conformal_factor", v.h_r, base * base)
    rep.compare("dirac_family_is_f_r_times_D", v.dirac_family, v.f_r * D)
    return rep


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conformal-dirac",
        description="Exact derivation and verification of conformal powers of the Dirac operator.",
    )
    parser.add_argument("--format", choices=FORMATS, default=None,
                        help=f"output format (default from ${FORMAT_ENV}, else table)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
        p.set_defaults(func=func)
        return p

    p = add("qtilde", cmd_qtilde, "q-family polynomials from the closed form and the recurrence")
    p.add_argument("--n", type=fraction_arg, required=True)
    p.add_argument("--k", type=fraction_arg, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--family", choices=special.FAMILIES, default="spinor")

    p = add("derive-power", cmd_derive_power, "conformal power from the obstruction and the product formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--J", type=curvature_arg, required=True, help="rational value or 'formal'")
    p.add_argument("--N", type=int, required=True)

    p = add("sphere", cmd_sphere, "spectral action on the unit round sphere")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--spectrum-file", default=None,
                   help="records 'k sign eigenvalue multiplicity', '#' starts a comment")

    p = add("verify-all", cmd_verify_all, "run every invariant suite")
    p.add_argument("--profile", choices=PROFILES, default="quick")

    p = add("holographic", cmd_holographic, "holographic deformation series")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--J", type=fraction_arg, required=True)
    p.add_argument("--n", type=int, required=True)

    p = add("membership", cmd_membership, "natural-coefficient presentation in the M-sequence")
    p.add_argument("--N", type=int, required=True)

    p = add("dual-hahn", cmd_dual_hahn, "dual Hahn identification of the q-families")
    p.add_argument("--family", choices=special.FAMILIES, default="spinor")
    p.add_argument("--n", type=fraction_arg, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--yint", type=int, default=None, help="lattice point (default: scan 1..8)")

    p = add("variation", cmd_variation, "Dirac operator along the Poincare-Einstein family")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--J", type=fraction_arg, required=True)
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    fmt = args.format or os.environ.get(FORMAT_ENV) or "table"
    if fmt not in FORMATS:
        print(f"error: ${FORMAT_ENV} must be one of {FORMATS}, got {fmt!r}", file=stderr)
        return EXIT_USAGE

    start = time.perf_counter()
    try:
        report = args.func(args)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except InputFileError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INPUT
    report.elapsed_ms = round((time.perf_counter() - start) * 1000)

    stdout.write(render_json(report) if fmt == "json" else render_table(report))
    return EXIT_OK if report.ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
