"""One-shot command line front end: every command prints a JSON document.

The document is ``{"status": "ok" | "error", "payload": ..., "diagnostics": [...]}``
and the exit code is 0 exactly when the status is ok. Rationals are always
written as strings ``"p/q"``.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import terms as T
from .certificates import CollapseCertificate, MalformedCertificate, RingPresentation, check_collapse_certificate
from .csqrt import complex_sqrt_cover
from .poly import DomainError, format_poly, parse_poly
from .prover import UnsupportedFragmentError, parse_rule, prove_lgroup_rule
from .rational import format_rational, parse_rational
from .semipoly import to_sup_inf_nf, univar_semipoly_compare
from .series import (
    LazySeries,
    NotAUnitError,
    SeriesPreconditionError,
    Unknown,
    format_series,
    hensel_newton_root,
    series_abs,
    series_frac,
    series_inverse,
    series_sup,
)
from .vroots import (
    PreconditionError,
    budan_fourier_index,
    interval_extrema,
    ivt_witness,
    sign_table,
    virtual_roots,
)


class UsageError(ValueError):
    pass


def _monic(text, notes):
    f = parse_poly(text)
    if f.degree < 1:
        raise DomainError("polynomial of degree >= 1 required")
    if not f.is_monic():
        f = f.monic()
        notes.append(f"normalized to the monic polynomial {format_poly(f)}")
    return f


def _rat(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


# commands ---------------------------------------------------------------------


def cmd_vroots(args, notes):
    return virtual_roots(_monic(args.poly, notes)).to_json()


def cmd_budan(args, notes):
    return budan_fourier_index(virtual_roots(_monic(args.poly, notes)), _rat(args.at)).to_json()


def cmd_ivt(args, notes):
    tri = virtual_roots(_monic(args.poly, notes))
    return ivt_witness(tri, _rat(args.lo), _rat(args.hi)).to_json()


def cmd_extrema(args, notes):
    tri = virtual_roots(_monic(args.poly, notes))
    return interval_extrema(tri, _rat(args.lo), _rat(args.hi)).to_json()


def cmd_signtable(args, notes):
    return {"regions": sign_table(virtual_roots(_monic(args.poly, notes))).to_json()}


def cmd_csqrt(args, notes):
    return complex_sqrt_cover(_rat(args.re), _rat(args.im)).to_json()


def cmd_nf(args, notes):
    nf = to_sup_inf_nf(T.parse_term(args.term))
    return {"nf": str(nf), "families": nf.to_json()}


def cmd_semieq(args, notes):
    return univar_semipoly_compare(T.parse_term(args.left), T.parse_term(args.right)).to_json()


def cmd_prove(args, notes):
    return prove_lgroup_rule(parse_rule(args.rule)).to_json()


def cmd_checkcert(args, notes):
    with open(args.presentation) as fh:
        pres = RingPresentation.from_json(json.load(fh))
    with open(args.certificate) as fh:
        cert = CollapseCertificate.from_json(json.load(fh))
    return check_collapse_certificate(pres, cert).to_json()


def _series(text):
    text = text.strip()
    if text == "geom":
        return LazySeries.geometric()
    return LazySeries.from_coeffs(parse_poly(text, var="e").coeffs)


def _newton_polynomial(text):
    """Coefficients (as series in e) of a polynomial in X."""
    t = T.parse_term(text)
    if T.has_lattice(t):
        raise UsageError("Newton input must be a polynomial in X and e")
    p = T.to_mpoly(t)
    extra = set(p.variables()) - {"X", "e"}
    if extra:
        raise UsageError(f"unexpected variables {sorted(extra)}; use X and e")
    by_degree = {}
    for mono, c in p.terms.items():
        powers = dict(mono)
        dx, de = powers.get("X", 0), powers.get("e", 0)
        by_degree.setdefault(dx, {})[de] = c
    top = max(by_degree) if by_degree else 0
    out = []
    for dx in range(top + 1):
        coeffs = by_degree.get(dx, {})
        n = max(coeffs) + 1 if coeffs else 1
        out.append(LazySeries.from_coeffs([coeffs.get(k, 0) for k in range(n)]))
    return out


def cmd_series(args, notes):
    depth = args.depth
    op = args.op
    if op in ("frac", "sup") and args.other is None:
        raise UsageError(f"--op {op} needs --other")
    if op == "abs":
        out = series_abs(_series(args.expr))
    elif op == "inv":
        out = series_inverse(_series(args.expr))
    elif op == "sup":
        out = series_sup(_series(args.expr), _series(args.other))
    elif op == "frac":
        out = series_frac(_series(args.expr), _series(args.other), depth)
        if isinstance(out, Unknown):
            notes.append("valuation of the denominator not reached within the depth")
            return {"result": "Unknown", "depth": out.depth, "coefficients": [format_rational(c) for c in out.prefix]}
    elif op == "newton":
        out = hensel_newton_root(_newton_polynomial(args.expr))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(op)
    return {
        "series": format_series(out, depth),
        "coefficients": [format_rational(c) for c in out.coeffs(depth)],
    }


# driver -------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="signfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("vroots", help="virtual-roots triangle of a polynomial in x")
    p.add_argument("poly")
    p.set_defaults(func=cmd_vroots)

    p = sub.add_parser("budan", help="Budan-Fourier sign changes and bracket at a point")
    p.add_argument("poly")
    p.add_argument("--at", required=True)
    p.set_defaults(func=cmd_budan)

    for name, func, help_ in (
        ("ivt", cmd_ivt, "a root certified by the clamped virtual roots"),
        ("extrema", cmd_extrema, "inf, sup and inf |f| on an interval"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("poly")
        p.add_argument("--from", dest="lo", required=True)
        p.add_argument("--to", dest="hi", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("signtable", help="sign table from the virtual roots")
    p.add_argument("poly")
    p.set_defaults(func=cmd_signtable)

    p = sub.add_parser("csqrt", help="square root of re + i*im with exact checks")
    p.add_argument("--re", required=True)
    p.add_argument("--im", required=True)
    p.set_defaults(func=cmd_csqrt)

    p = sub.add_parser("nf", help="sup-inf normal form of a term")
    p.add_argument("term")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("semieq", help="compare two univariate terms as functions")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_semieq)

    p = sub.add_parser("prove", help="prove a rule of lattice-ordered groups or refute it")
    p.add_argument("rule")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("checkcert", help="check a collapse certificate")
    p.add_argument("presentation")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_checkcert)

    p = sub.add_parser("series", help="operations on power series in e")
    p.add_argument("expr", help="polynomial in e, 'geom' for 1/(1-e), or for newton a polynomial in X and e")
    p.add_argument("--op", required=True, choices=["abs", "inv", "frac", "newton", "sup"])
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--other", help="second operand for frac and sup")
    p.set_defaults(func=cmd_series)
    return parser


_EXPECTED_ERRORS = (
    T.ParseError,
    DomainError,
    PreconditionError,
    UnsupportedFragmentError,
    MalformedCertificate,
    NotAUnitError,
    SeriesPreconditionError,
    UsageError,
    OSError,
    json.JSONDecodeError,
    KeyError,
)


def run(argv):
    """Run one command; returns the result document (a dict)."""
    args = build_parser().parse_args(argv)
    notes = []
    try:
        payload = args.func(args, notes)
    except _EXPECTED_ERRORS as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, T.ParseError):
            error["position"] = exc.pos
            error["expected"] = list(exc.expected)
        return {"status": "error", "payload": None, "diagnostics": [str(exc)], "error": error}
    return {"status": "ok", "payload": payload, "diagnostics": notes}


def main(argv=None):
    result = run(sys.argv[1:] if argv is None else argv)
    print(json.dumps(result, indent=2, default=_default))
    return 0 if result["status"] == "ok" else 1


def _default(o):
    if isinstance(o, Fraction):
        return format_rational(o)
    raise TypeError(type(o).__name__)


if __name__ == "__main__":
    sys.exit(main())
