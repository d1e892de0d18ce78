"""Command-line front end.

Exit status: 0 when the computation succeeded and every check passed, 1 when
a verification check failed (the report is still written), 2 on bad input.
Errors go to standard error as one line ``ERROR:<category>: <message>``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
from importlib import resources
import re
import sys
from collections.abc import Sequence
from fractions import Fraction

from . import __version__
from .bivariate import branch_point_valuations, parse_poly
from .errors import PadicLabError, ParseError, UsageError
from .exact_arith import (
    INF,
    ExponentRule,
    binom_series,
    check_prime,
    count_carries,
    digit_sum,
    gamma_pair,
    kummer_binom_val,
    padic_binom_val,
    vp,
)
from .radius import (
    DEFAULT_TOLERANCE,
    ValuationProfile,
    boundary_and_transcendence,
    branch_containment,
    profile,
    profile_to_csv,
    radius_estimate,
    read_profile,
)
from .series import TruncatedSeries, expand_by_recurrence, hensel_expand, verify_root
from .suites import (
    SUITES,
    beta_suite,
    cubic_suite,
    dwork_suite,
    ex2_suite,
    fuss_catalan_suite,
    gamma_suite,
    power_lemma_suite,
    wild_suite,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# value parsing
# ---------------------------------------------------------------------------

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}")
    den = int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None


def gamma_rule_parse(text: str) -> ExponentRule:
    """``n^2``, ``affine:c,g``, ``beta:q`` or ``list:a,b,...+tail:g``."""
    text = text.strip()
    if text.replace(" ", "") == "n^2":
        return ExponentRule.quadratic()
    kind, sep, body = text.partition(":")
    if not sep:
        raise ParseError(f"unknown gamma rule {text!r}")
    if kind == "affine":
        vals = _int_list(body)
        if len(vals) != 2:
            raise ParseError("affine rule takes affine:<c>,<g>")
        return ExponentRule.affine(*vals)
    if kind == "beta":
        return ExponentRule.beta(parse_rational(body))
    if kind == "list":
        head, sep, tail = body.partition("+tail:")
        if not sep:
            raise ParseError("list rule takes list:<ints>+tail:<g>")
        gap = _int_list(tail)
        if len(gap) != 1:
            raise ParseError("tail gap must be one integer")
        if gap[0] <= 0:
            raise UsageError(f"list rule {text!r}: tail gap {gap[0]} is not increasing")
        return ExponentRule.listed(_int_list(head), gap[0])
    raise ParseError(f"unknown gamma rule kind {kind!r}")


# ---------------------------------------------------------------------------
# JSON helpers
# ---------------------------------------------------------------------------


def jq(v) -> int | str:
    """A rational or valuation for JSON: an integer when integral, else "p/q"; inf as "inf"."""
    if v == INF:
        return "inf"
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _profile_summary(pr: ValuationProfile, tol: Fraction) -> dict:
    est = radius_estimate(pr)
    bt = boundary_and_transcendence(pr, tolerance=tol)
    return {
        "radius": {
            "hull_slope_tail": jq(est.hull_slope_tail),
            "window_min_ratio": jq(est.window_min_ratio),
            "lower_bound": jq(est.lower_bound),
            "tail_window": list(est.tail_window),
            "polynomial": est.polynomial,
        },
        "boundary": {
            "closed_unit_disk_convergence_evidence": bt.closed_unit_disk_convergence_evidence,
            "liminf_zero_evidence": bt.liminf_zero_evidence,
            "transcendence_flag": bt.transcendence_flag,
            "tail_min_valuation": jq(bt.tail_min_valuation),
            "head_min_valuation": jq(bt.head_min_valuation),
            "convergence_witnesses": list(bt.convergence_witnesses),
            "liminf_witnesses": list(bt.liminf_witnesses),
        },
    }


def _branch_json(bd) -> dict:
    return {
        "prime": bd.prime,
        "zero_multiplicity": bd.zero_multiplicity,
        "valuations": [jq(v) for v in bd.valuations],
        "discriminant": [jq(c) for c in bd.discriminant],
        "leading_zero_multiplicity": bd.leading_zero_multiplicity,
        "leading_valuations": [jq(v) for v in bd.leading_valuations],
    }


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _order(args) -> int:
    if args.order < 1:
        raise UsageError(f"--order must be >= 1, got {args.order}")
    return args.order


def _expand(args) -> tuple[int, object]:
    f = parse_poly(args.poly)
    y0, n = parse_rational(args.y0), _order(args)
    p = check_prime(args.prime) if args.prime is not None else None
    s = expand_by_recurrence(f, y0, n) if args.method == "recurrence" else hensel_expand(f, y0, n)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("n", "num", "den", "vp"))
        for i, c in enumerate(s.coeffs):
            w.writerow((i, c.numerator, c.denominator, "" if p is None else jq(vp(c, p))))
        return 0, buf.getvalue()
    return 0, {
        "command": "expand",
        "poly": f.text(),
        "y0": jq(y0),
        "order": n,
        "prime": p,
        "method": args.method,
        "verified": verify_root(f, s),
        "max_bits": s.max_bits(),
        "coefficients": [
            {"n": i, "value": str(c), "vp": None if p is None else jq(vp(c, p))}
            for i, c in enumerate(s.coeffs)
        ],
    }


def _branch(args) -> tuple[int, object]:
    f = parse_poly(args.poly)
    bd = branch_point_valuations(f, check_prime(args.prime))
    return 0, {"command": "branch", "poly": f.text(), **_branch_json(bd)}


def _radius(args) -> tuple[int, object]:
    p = check_prime(args.prime)
    tol = parse_rational(args.slope_tol)
    f = None
    if args.profile:
        pr = read_profile(args.profile, p)
    elif args.binomial is not None:
        pr = profile(TruncatedSeries.of(binom_series(parse_rational(args.binomial),
                                                     _order(args) + 1)), p)
    elif args.poly:
        f = parse_poly(args.poly)
        pr = profile(hensel_expand(f, parse_rational(args.y0), _order(args)), p)
    else:
        raise UsageError("radius needs --poly, --binomial or --profile")
    if args.format == "csv":
        return 0, profile_to_csv(pr)
    out = {"command": "radius", "prime": p, "order": pr.order, "tolerance": jq(tol),
           **_profile_summary(pr, tol)}
    if f is not None and f.deg_y >= 2:
        bc = branch_containment(f, pr, tol)
        out["branch"] = {
            "verdict": bc.verdict,
            "description": bc.description,
            "bracketed": bc.bracketed,
            "radius_matches_branch": bc.radius_matches_branch,
            **_branch_json(bc.branch),
        }
    return 0, out


def _kummer(args) -> tuple[int, object]:
    p = check_prime(args.prime)
    n, m = args.n, args.m
    if n < 0 or m < 0:
        raise UsageError("kummer needs n, m >= 0")
    v = kummer_binom_val(n, m, p)
    return 0, {
        "command": "kummer", "n": n, "m": m, "prime": p, "valuation": v,
        "carries": count_carries(m, n - m, p),
        "digit_sum_formula": (digit_sum(m, p) + digit_sum(n - m, p) - digit_sum(n, p)) // (p - 1),
    }


def _gamma(args) -> tuple[int, object]:
    rule = gamma_rule_parse(args.rule)
    n = _order(args)
    tol = parse_rational(args.slope_tol)
    g1, g2 = gamma_pair(rule)
    vals = [padic_binom_val(g1, m) + padic_binom_val(g2, m) for m in range(n + 1)]
    pr = ValuationProfile.from_values(2, vals)
    if args.format == "csv":
        return 0, profile_to_csv(pr)
    powers = []
    j = 0
    while (1 << rule.term(j)) <= n:
        m = 1 << rule.term(j)
        powers.append({"j": j, "m": m, "valuation": jq(vals[m])})
        j += 1
    out = {"command": "gamma", "rule": rule.name, "order": n, "prime": 2,
           "exponents": rule.terms(j + 1), "powers_of_two": powers}
    if n >= 16:
        out.update(_profile_summary(pr, tol))
    return 0, out


_SUITE_ARGS = {
    "cubic": lambda a: cubic_suite(**_opt(a, order="order", prime="prime")),
    "fuss-catalan": lambda a: fuss_catalan_suite(**_opt(a, order="order", prime="prime")),
    "dwork": lambda a: dwork_suite(**_opt(a, order="order", prime="prime"),
                                   tolerance=parse_rational(a.slope_tol)),
    "wild": lambda a: wild_suite(**_opt(a, order="order", prime="prime"),
                                 tolerance=parse_rational(a.slope_tol)),
    "gamma": lambda a: gamma_suite(
        **({"rule": gamma_rule_parse(a.rule)} if a.rule else {}),
        **_opt(a, order="order"), tolerance=parse_rational(a.slope_tol)),
    "beta": lambda a: beta_suite(**({"beta": parse_rational(a.beta)} if a.beta else {}),
                                 **_opt(a, j_max="j_max")),
    "power-lemma": lambda a: power_lemma_suite(**_opt(a, k_max="k_max", order="order")),
    "ex2": lambda a: ex2_suite(**_opt(a, order="order", prime="prime")),
}


def _opt(args, **names) -> dict:
    """Keyword arguments for the options the user actually gave."""
    return {k: getattr(args, v) for k, v in names.items() if getattr(args, v) is not None}


def _verify(args) -> tuple[int, object]:
    if args.suite == "all":
        reports = [fn() for fn in SUITES.values()]
        ok = all(r.passed for r in reports)
        return (0 if ok else 1), {"command": "verify", "suite": "all", "pass": ok,
                                  "reports": [r.to_json() for r in reports]}
    rep = _SUITE_ARGS[args.suite](args)
    return (0 if rep.passed else 1), rep.to_json()


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="padic-lab", description="p-adic expansions of algebraic series")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json",)):
        p.add_argument("--format", choices=fmt, default="json")
        p.add_argument("--output", help="write the result here instead of standard output")

    p = sub.add_parser("expand", help="power series root of f(x, y) = 0 through y0")
    p.add_argument("--poly", required=True)
    p.add_argument("--y0", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--method", choices=("hensel", "recurrence"), default="hensel")
    common(p, ("json", "csv"))
    p.set_defaults(run=_expand)

    p = sub.add_parser("branch", help="valuations of the branch points of f")
    p.add_argument("--poly", required=True)
    p.add_argument("--prime", type=int, required=True)
    common(p)
    p.set_defaults(run=_branch)

    p = sub.add_parser("radius", help="radius estimate and boundary evidence")
    p.add_argument("--poly")
    p.add_argument("--y0", default="0")
    p.add_argument("--binomial", help="use the series of (1+x)^BETA")
    p.add_argument("--profile", help="read a valuation profile CSV")
    p.add_argument("--order", type=int, default=256)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--slope-tol", default=str(DEFAULT_TOLERANCE))
    common(p, ("json", "csv"))
    p.set_defaults(run=_radius)

    p = sub.add_parser("verify", help="run a reproduction suite")
    p.add_argument("--suite", choices=(*SUITES, "all"), required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--rule")
    p.add_argument("--beta")
    p.add_argument("--j-max", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--slope-tol", default=str(DEFAULT_TOLERANCE))
    common(p)
    p.set_defaults(run=_verify)

    p = sub.add_parser("kummer", help="v_p of C(n, m) by carries")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    common(p)
    p.set_defaults(run=_kummer)

    p = sub.add_parser("gamma", help="v_2 of C(g1, m) C(g2, m) for an exponent rule")
    p.add_argument("--rule", required=True)
    p.add_argument("--order", type=int, default=1024)
    p.add_argument("--slope-tol", default=str(DEFAULT_TOLERANCE))
    common(p, ("json", "csv"))
    p.set_defaults(run=_gamma)
    return ap


COMMANDS = ("expand", "branch", "radius", "verify", "kummer", "gamma")


def load_schema(command: str) -> dict:
    """The JSON schema shipped for a command's output."""
    if command not in COMMANDS:
        raise UsageError(f"no schema for {command!r}")
    path = resources.files("padic_lab") / "schemas" / f"{command}.schema.json"
    return json.loads(path.read_text())


def _emit(result: object, path: str | None) -> None:
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        code, result = args.run(args)
        _emit(result, args.output)
        return code
    except PadicLabError as exc:
        print(f"ERROR:{exc.category}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ERROR:io: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
