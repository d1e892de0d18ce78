"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``CRITERION k: PASS|FAIL`` line with the
observed values, then asserts. Failing criteria stay failing.
"""
import json
import random
import time
from fractions import Fraction

import jsonschema
import pytest

from padic_lab.bivariate import BivarPoly, branch_point_valuations, parse_poly
from padic_lab.cli import load_schema, run
from padic_lab.exact_arith import (
    ExponentRule,
    binom_series,
    gamma_pair,
    kummer_binom_val,
    padic_sub_val,
    vp,
    vp_int,
)
from padic_lab.radius import (
    RADIUS_BELOW,
    bdr_certificate,
    branch_containment,
    profile,
    profile_to_csv,
    read_profile,
)
from padic_lab.series import TruncatedSeries, expand_by_recurrence, hensel_expand
from padic_lab.suites import (
    beta_suite,
    cubic_suite,
    dwork_suite,
    fuss_catalan_closed_form,
    fuss_catalan_recurrence,
    gamma_suite,
    gamma_valuations,
    power_lemma_suite,
    wild_suite,
)

TOL = Fraction(1, 50)


@pytest.fixture
def verdict(capsys):
    def emit(k, problems, detail):
        status = "PASS" if not problems else "FAIL"
        with capsys.disabled():
            print(f"\nCRITERION {k}: {status} {detail}"
                  + ("" if not problems else " | " + "; ".join(problems)))
        assert not problems, problems
    return emit


def timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


def cubic_oracle(order):
    """Coefficients of the root near 2 of y^3 - 3y = 2 - x.

    With x = 4 sin^2 t the root is 2 cos(2t/3), which equals
    2 * 2F1(-1/3, 1/3; 1/2; x/4). This is independent of the Chebyshev sum.
    """
    out, term = [], Fraction(2)
    for k in range(order + 1):
        out.append(term)
        a, b, c = Fraction(-1, 3) + k, Fraction(1, 3) + k, Fraction(1, 2) + k
        term = term * a * b / (c * (k + 1)) / 4
    return out


def test_criterion_1_cubic(verdict):
    rep, dt = timed(cubic_suite, 512, 2)
    f = parse_poly("Y^3-3*Y+X-2")
    s = hensel_expand(f, 2, 512)
    problems = []
    neg = [n for n in range(513) if vp(s[n], 2) < 0]
    if neg:
        problems.append(f"negative valuation at n={neg[0]}")
    oracle = cubic_oracle(200)
    mism = [n for n in range(201) if s[n] != oracle[n]]
    if mism:
        problems.append(f"closed form mismatch at n={mism[0]}")
    bd = branch_point_valuations(f, 2)
    if (bd.zero_multiplicity, list(bd.valuations)) != (1, [2]):
        problems.append(f"branch data {bd.zero_multiplicity}, {bd.valuations}")
    if not rep.passed:
        problems.append("suite report has failing checks")
    if dt > 10:
        problems.append(f"runtime {dt:.1f}s > 10s")
    verdict(1, problems, f"N=512 p=2 zero_roots={bd.zero_multiplicity} "
            f"valuations={[str(w) for w in bd.valuations]} "
            f"runtime={dt:.2f}s")


def test_criterion_2_fuss_catalan(verdict):
    problems, times = [], []
    for p in (2, 3, 5):
        t0 = time.perf_counter()
        f = parse_poly(f"Y^{p}*(Y+1)-X")
        s = hensel_expand(f, -1, 500)
        rec = fuss_catalan_recurrence(p, 500)
        closed = fuss_catalan_closed_form(p, 500)
        gen = expand_by_recurrence(f, -1, 500)
        dt = time.perf_counter() - t0
        times.append(f"p={p}:{dt:.2f}s")
        for name, other in (("recurrence", rec), ("closed form", closed),
                            ("normalized recurrence", gen.coeffs)):
            bad = next((n for n in range(501) if s[n] != other[n]), None)
            if bad is not None:
                problems.append(f"p={p} Hensel != {name} at n={bad} ({s[bad]} vs {other[bad]})")
        if any(c.denominator != 1 for c in s.coeffs):
            problems.append(f"p={p} non-integer coefficient")
        if (s[0], s[1], s[2]) != (-1, -1, p):
            problems.append(f"p={p} head {s[0]}, {s[1]}, {s[2]}")
        if dt > 10:
            problems.append(f"p={p} runtime {dt:.1f}s")
    verdict(2, problems, "N=500 " + " ".join(times))


def test_criterion_3_dwork(verdict):
    problems, parts = [], []
    t0 = time.perf_counter()
    for p in (2, 3, 5):
        s = TruncatedSeries.of(binom_series(Fraction(1, p), 2001))
        bc = branch_containment(parse_poly(f"Y^{p}-1-X"), profile(s, p), TOL)
        slope = bc.estimate.hull_slope_tail
        target = Fraction(-p, p - 1)
        parts.append(f"p={p}:slope={float(slope):.4f}")
        if abs(slope - target) > TOL:
            problems.append(f"p={p} slope {slope} vs {target}")
        if bc.verdict != RADIUS_BELOW:
            problems.append(f"p={p} verdict {bc.verdict}")
        if not dwork_suite(p, 2000).passed:
            problems.append(f"p={p} suite report has failing checks")
    dt = time.perf_counter() - t0
    if dt > 20:
        problems.append(f"runtime {dt:.1f}s > 20s")
    verdict(3, problems, f"N=2000 {' '.join(parts)} verdict=branch outside radius "
            f"runtime={dt:.2f}s")


def test_criterion_4_wild(verdict):
    problems, parts = [], []
    t0 = time.perf_counter()
    for p in (2, 3):
        f = parse_poly(f"Y^{p - 1}*(Y-1)-X")
        s = hensel_expand(f, 1, 1000)
        pr = profile(s, p)
        neg = [n for n in range(1001) if pr.values[n] < 0]
        if neg:
            problems.append(f"p={p} negative valuation at n={neg[0]}")
        tail_units = [n for n in range(pr.tail_start(), 1001) if pr.values[n] == 0]
        parts.append(f"p={p}:tail_units={len(tail_units)}")
        if len(tail_units) < 20:
            problems.append(f"p={p} only {len(tail_units)} unit coefficients in "
                            f"[{pr.tail_start()}, 1000] (at {tail_units})")
        bc = branch_containment(f, pr, TOL)
        if Fraction(-p) not in bc.branch.valuations:
            problems.append(f"p={p} branch valuation -p missing")
        if bc.verdict != RADIUS_BELOW:
            problems.append(f"p={p} verdict {bc.verdict}")
    dt = time.perf_counter() - t0
    if dt > 30:
        problems.append(f"runtime {dt:.1f}s > 30s")
    verdict(4, problems, f"N=1000 {' '.join(parts)} runtime={dt:.2f}s")


def test_criterion_5_gamma(verdict):
    t0 = time.perf_counter()
    rule = ExponentRule.quadratic()
    order = 1 << 17
    v = gamma_valuations(rule, order)
    problems = []
    exact = {n: v[1 << n * n] for n in range(1, 5)}
    for n, val in exact.items():
        if val != 2 * n + 1:
            problems.append(f"v(a_(2^{n * n})) = {val}, want {2 * n + 1}")
    g1, g2 = gamma_pair(rule)
    for m in range(10_001):
        lhs = 2 * vp_int(m + 1, 2) + v[m + 1]
        rhs = padic_sub_val(g1, m) + padic_sub_val(g2, m) + v[m]
        if lhs != rhs:
            problems.append(f"recurrence identity fails at m={m}")
            break
    rep = gamma_suite(rule, order)
    lemma = rep.check("2-adic binomial lower bound")
    if not lemma.passed:
        problems.append(f"lower bound: {lemma.observed}")
    dt = time.perf_counter() - t0
    if dt > 30:
        problems.append(f"runtime {dt:.1f}s > 30s")
    verdict(5, problems, f"N=2^17 values={exact} runtime={dt:.2f}s")


def test_criterion_6_beta(verdict):
    problems = []
    for beta in (Fraction(1), Fraction(1, 2)):
        terms = ExponentRule.beta(beta).terms(4)
        if beta == 1 and terms != [1, 3, 11, 2059]:
            problems.append(f"prefix {terms}")
        rep = beta_suite(beta, 2)
        for j in range(3):
            ratio = Fraction(terms[j + 1] - terms[j], 1 << terms[j])
            if abs(ratio - beta) > Fraction(1, 1 << terms[j]):
                problems.append(f"beta={beta} j={j} ratio {ratio}")
        if not rep.passed:
            problems.append(f"beta={beta} suite report has failing checks")
    verdict(6, problems, f"beta=1 prefix={ExponentRule.beta(1).terms(4)}")


def legendre(n, p):
    out, q = 0, p
    while q <= n:
        out += n // q
        q *= p
    return out


def oracle_branch(pairs, p):
    zeros, vals = 0, []
    for i in range(len(pairs)):
        for k in range(i + 1, len(pairs)):
            (a1, b1), (a2, b2) = pairs[i], pairs[k]
            da, db = a1 - a2, b1 - b2
            if da == 0:
                continue
            if db == 0:
                zeros += 2
            else:
                vals += [vp(Fraction(-db) / da, p)] * 2
    return zeros, sorted(vals)


SUITE_POLYS = [
    ("Y^3-3*Y+X-2", 2),
    ("Y^2*(Y+1)-X", -1), ("Y^3*(Y+1)-X", -1), ("Y^5*(Y+1)-X", -1),
    ("Y^2-1-X", 1), ("Y^3-1-X", 1), ("Y^5-1-X", 1),
    ("Y*(Y-1)-X", 1), ("Y^2*(Y-1)-X", 1),
    ("Y^2+Y-8*X", 0), ("Y^2+Y-27*X", 0),
]


def test_criterion_7_oracles(verdict):
    problems = []
    for p in (2, 3, 5, 7):
        fact = [legendre(n, p) for n in range(501)]
        for n in range(501):
            for m in range(n + 1):
                if kummer_binom_val(n, m, p) != fact[n] - fact[m] - fact[n - m]:
                    problems.append(f"kummer n={n} m={m} p={p}")
    rng = random.Random(20261015)
    for trial in range(200):
        p = rng.choice([2, 3, 5])
        k = rng.randint(2, 5)
        pairs = set()
        while len(pairs) < k:
            pairs.add((Fraction(rng.randint(-6, 6), rng.choice([1, 1, 3, 4])),
                       Fraction(rng.randint(-8, 8) * rng.choice([1, p, p * p]))))
        pairs = sorted(pairs)
        f = BivarPoly.constant(1)
        for a, b in pairs:
            f = f * (BivarPoly.y() - BivarPoly.x().scale(a) - BivarPoly.constant(b))
        bd = branch_point_valuations(f, p)
        if (bd.zero_multiplicity, list(bd.valuations)) != oracle_branch(pairs, p):
            problems.append(f"branch oracle trial {trial}")
    for text, y0 in SUITE_POLYS:
        f = parse_poly(text)
        if expand_by_recurrence(f, y0, 256) != hensel_expand(f, y0, 256):
            problems.append(f"Hensel != recurrence for {text}")
    verdict(7, problems[:5], "kummer 4 primes n<=500, 200 factored products, "
            f"{len(SUITE_POLYS)} suite polynomials to N=256")


def test_criterion_8_bdr(verdict):
    problems, parts = [], []
    for p in (2, 3):
        f = parse_poly(f"Y^2+Y-{p ** 3}*X")
        s = hensel_expand(f, 0, 500)
        cert = bdr_certificate(f, s, p)
        parts.append(f"p={p}:eta={cert.eta},eps={cert.epsilon},D={cert.x_degree}")
        if (cert.eta, cert.epsilon, cert.x_degree) != (1, Fraction(1, 3), 1):
            problems.append(f"p={p} constants {cert}")
        bad = [m for m in range(501) if vp(s[m], p) < cert.epsilon * m + cert.eta]
        if bad or not cert.certified:
            problems.append(f"p={p} inequality fails at m={bad[:3]}")
    verdict(8, problems, " ".join(parts) + " m<=500")


def test_criterion_9_power_lemma(verdict):
    rep = power_lemma_suite(4, 256)
    problems = [c.desc for c in rep.checks if not c.passed]
    verdict(9, problems, f"k<=4 N=256 checks={len(rep.checks)}")


def test_criterion_10_cli(verdict, tmp_path, capsys):
    problems = []

    def cli_json(*argv):
        code = run(list(argv))
        out = capsys.readouterr().out
        doc = json.loads(out)
        try:
            jsonschema.validate(doc, load_schema(argv[0]))
        except jsonschema.ValidationError as err:
            problems.append(f"{argv[0]} schema: {err.message}")
        return code, doc

    s = hensel_expand(parse_poly("Y^2*(Y-1)-X"), 1, 300)
    pr = profile(s, 3)
    path = tmp_path / "profile.csv"
    path.write_text(profile_to_csv(pr))
    if read_profile(path, 3) != pr:
        problems.append("profile CSV round-trip differs")
    cli_path = tmp_path / "cli.csv"
    run(["radius", "--poly", "Y^2*(Y-1)-X", "--y0", "1", "--order", "300", "--prime", "3",
         "--format", "csv", "--output", str(cli_path)])
    if read_profile(cli_path, 3) != pr:
        problems.append("CLI profile CSV differs")
    cli_json("expand", "--poly", "Y^2-1-X", "--y0", "1", "--order", "8", "--prime", "2")
    cli_json("branch", "--poly", "Y^3-3*Y+X-2", "--prime", "2")
    cli_json("radius", "--profile", str(path), "--prime", "3")
    cli_json("radius", "--binomial", "1/2", "--order", "200", "--prime", "2")
    cli_json("kummer", "--n", "100", "--m", "37", "--prime", "3")
    cli_json("gamma", "--rule", "n^2")
    code, doc = cli_json("verify", "--suite", "all")
    if code != 0:
        failing = [r["name"] for r in doc["reports"] if not all(c["pass"] for c in r["checks"])]
        problems.append(f"verify --suite all exit {code} ({failing})")
    verdict(10, problems, f"verify --suite all exit={code}")
