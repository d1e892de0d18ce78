"""Reproducible checks of the concrete constructions.

Every suite returns a :class:`SuiteReport`: a list of checks, each with an
expected value, the observed value, a pass flag and a short note on where
the expectation comes from.  A failing check names the first index at
which it fails.
"""

from __future__ import annotations

import bisect
import math
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .bivariate import branch_point_valuations, parse_poly, partial_y
from .errors import UsageError
from .exact_arith import (
    INF,
    ExponentRule,
    RationalLike,
    binom_series,
    check_prime,
    gamma_pair,
    kummer_binom_val,
    padic_binom_val,
    padic_sub_val,
    vp,
    vp_int,
)
from .radius import (
    ALL_INSIDE,
    DEFAULT_TOLERANCE,
    RADIUS_BELOW,
    ValuationProfile,
    boundary_and_transcendence,
    branch_containment,
    profile,
)
from .series import TruncatedSeries, hensel_expand, mul, pow, rescale


@dataclass(frozen=True)
class Check:
    desc: str
    expected: str
    observed: str
    passed: bool
    provenance: str

    def to_json(self) -> dict:
        return {"desc": self.desc, "expected": self.expected, "observed": self.observed,
                "pass": self.passed, "provenance": self.provenance}


@dataclass(frozen=True)
class SuiteReport:
    name: str
    prime: int
    order: int
    checks: tuple[Check, ...]
    elapsed_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, prefix: str) -> Check:
        """The first check whose description starts with ``prefix``."""
        for c in self.checks:
            if c.desc.startswith(prefix):
                return c
        raise KeyError(prefix)

    def to_json(self) -> dict:
        return {"name": self.name, "prime": self.prime, "order": self.order,
                "checks": [c.to_json() for c in self.checks],
                "elapsed_ms": round(self.elapsed_ms, 3)}


class _Builder:
    def __init__(self, name: str, prime: int, order: int):
        self.name, self.prime, self.order = name, prime, order
        self.checks: list[Check] = []
        self.t0 = time.perf_counter()

    def add(self, desc: str, expected, observed, passed: bool, provenance: str) -> bool:
        self.checks.append(Check(desc, str(expected), str(observed), bool(passed), provenance))
        return passed

    def first_failure(self, desc: str, expected: str, bad: int | None, provenance: str,
                      what: str = "first failure at n=") -> bool:
        observed = "holds" if bad is None else f"{what}{bad}"
        return self.add(desc, expected, observed, bad is None, provenance)

    def report(self) -> SuiteReport:
        ms = (time.perf_counter() - self.t0) * 1000
        return SuiteReport(self.name, self.prime, self.order, tuple(self.checks), ms)


def _first(pred: Callable[[int], bool], indices) -> int | None:
    return next((n for n in indices if not pred(n)), None)


def _require_order(order: int, least: int) -> None:
    if order < least:
        raise UsageError(f"order must be at least {least}, got {order}")


# ---------------------------------------------------------------------------
# y^3 - 3y = 2 - x
# ---------------------------------------------------------------------------

CUBIC = "Y^3-3*Y+X-2"


def chebyshev_t(n: int) -> list[int]:
    """Coefficients of T_n in the basis 1, X, X^2, ... from the explicit sum

    T_n(X) = 1/2 sum_{m <= n/2} (-1)^m (C(n-m, m) + C(n-m-1, n-2m)) (2X)^(n-2m).

    The coefficients are integers; C(-1, 0) = 1 covers n = 0.
    """
    out = [0] * (n + 1)
    for m in range(n // 2 + 1):
        i = n - 2 * m
        c = math.comb(n - m, m) + (math.comb(n - m - 1, i) if n - m - 1 >= 0 else 1)
        out[i] += (-1) ** m * (c << i) // 2
    return out


def cubic_closed_form(order: int) -> tuple[list[Fraction], list[Fraction]]:
    """Expand sum_n 2 C(1/3, n) u^n T_n(-u/2) through u^(2*order).

    Returns (coefficients of x^k = u^(2k) for k <= order, odd-power coefficients).
    """
    top = 2 * order
    b = binom_series(Fraction(1, 3), top + 1)
    weight = [Fraction(2 * (-1) ** i, 1 << i) for i in range(top + 1)]  # 2 (-1/2)^i
    u: list[Fraction] = [Fraction(0)] * (top + 1)
    for n in range(top + 1):
        inner: dict[int, Fraction] = {}
        for i, c in enumerate(chebyshev_t(n)[: top - n + 1]):
            if c:
                inner[n + i] = c * weight[i]
        for k, w in inner.items():
            u[k] += b[n] * w
    return u[0::2], u[1::2]


def cubic_suite(order: int = 512, prime: int = 2, closed_form_order: int = 200) -> SuiteReport:
    _require_order(order, 8)
    check_prime(prime)
    rep = _Builder("cubic", prime, order)
    f = parse_poly(CUBIC)
    s = hensel_expand(f, 2, order)
    pr = profile(s, prime)
    rep.add("a_0 = 2", 2, s[0], s[0] == 2, "starting root y(0) = 2")
    rep.add("a_1 = -1/9", Fraction(-1, 9), s[1], s[1] == Fraction(-1, 9),
            "one Newton step from f(2+t) = 9t + 6t^2 + t^3 + x")
    bad = _first(lambda n: pr.values[n] >= 0, range(order + 1))
    rep.first_failure(f"v_{prime}(a_n) >= 0 for n <= {order}", "all coefficients integral",
                      bad, "series lies in Z_2[[x]]")
    k = min(closed_form_order, order)
    even, odd = cubic_closed_form(k)
    rep.first_failure(f"Chebyshev form has no odd powers of u through u^{2 * k}", "all zero",
                      _first(lambda i: odd[i] == 0, range(len(odd))),
                      "Chebyshev explicit formula", "first nonzero at u^odd index ")
    rep.first_failure(f"Chebyshev form equals the Hensel series for n <= {k}", "exact equality",
                      _first(lambda n: even[n] == s[n], range(k + 1)),
                      "Chebyshev explicit formula vs Hensel lifting", "first mismatch at n=")
    bd = branch_point_valuations(f, prime)
    expected = (1, (Fraction(2),)) if prime == 2 else None
    observed = (bd.zero_multiplicity, bd.valuations)
    rep.add("branch points: zero multiplicity and nonzero valuations",
            _fmt_branch(*expected) if expected else "reported",
            _fmt_branch(*observed), expected is None or observed == expected,
            "discriminant 27x(x-4): branch points 0 and 4")
    return rep.report()


def _fmt_val(v) -> str:
    return "inf" if v == INF else str(v)


def _fmt_branch(k: int, vals: Sequence) -> str:
    return f"zero root x{k}, valuations [{', '.join(_fmt_val(v) for v in vals)}]"


# ---------------------------------------------------------------------------
# y^p (y + 1) = x
# ---------------------------------------------------------------------------


def fuss_catalan_recurrence(p: int, order: int) -> list[Fraction]:
    """a_0 = a_1 = -1, a_{n+1} = (1/n) sum_{i=1}^n a_i a_{n-i+1} (i(p+1) - 1)."""
    a = [Fraction(-1), Fraction(-1)][: order + 1]
    for n in range(1, order):
        acc = sum((a[i] * a[n - i + 1] * (i * (p + 1) - 1) for i in range(1, n + 1)),
                  Fraction(0))
        a.append(acc / n)
    return a


def fuss_catalan_closed_form(p: int, order: int) -> list[Fraction]:
    """a_0 = -1 and a_n = (-1)^n / ((p+1)n - 1) * C((p+1)n - 1, n) for n >= 1."""
    out = [Fraction(-1)]
    for n in range(1, order + 1):
        top = (p + 1) * n - 1
        out.append(Fraction((-1) ** n * math.comb(top, n), top))
    return out


def fuss_catalan_suite(prime: int = 3, order: int = 500) -> SuiteReport:
    check_prime(prime)
    _require_order(order, 8)
    p = prime
    rep = _Builder("fuss-catalan", p, order)
    f = parse_poly(f"Y^{p}*(Y+1)-X")
    s = hensel_expand(f, -1, order)
    rec = fuss_catalan_recurrence(p, order)
    closed = fuss_catalan_closed_form(p, order)
    rng = range(order + 1)
    rep.first_failure("Hensel expansion equals the quadratic recurrence", "exact equality",
                      _first(lambda n: s[n] == rec[n], rng), "Fuss-Catalan recurrence",
                      "first mismatch at n=")
    rep.first_failure("Hensel expansion equals the closed form", "exact equality",
                      _first(lambda n: s[n] == closed[n], rng), "Fuss-Catalan closed form",
                      "first mismatch at n=")
    twisted = _first(lambda n: s[n] == closed[n] or s[n] == (-1) ** n * closed[n], rng)
    sign = "x" if _first(lambda n: s[n] == closed[n], rng) is None else "-x"
    rep.add("closed form matches the Hensel series up to x -> -x", "match at x or -x",
            f"matches at {sign}" if twisted is None else f"first mismatch at n={twisted}",
            twisted is None, "diagnostic for the sign convention")
    rep.first_failure("all coefficients are integers", "denominators 1",
                      _first(lambda n: s[n].denominator == 1, rng), "series lies in Z_p[[x]]")
    rep.first_failure(f"v_{p}(a_n) >= 0", "all n", _first(lambda n: vp(s[n], p) >= 0, rng),
                      "series lies in Z_p[[x]]")
    head = (s[0], s[1], s[2])
    want = (Fraction(-1), Fraction(-1), Fraction(p))
    rep.add("a_0, a_1, a_2", "-1, -1, " + str(p), ", ".join(map(str, head)), head == want,
            "a_0 = a_1 = -1 and a_2 = p")
    bc = branch_containment(f, profile(s, p))
    rep.add("branch containment", ALL_INSIDE, bc.verdict, bc.verdict == ALL_INSIDE,
            "all finite branch points inside the disk of convergence")
    return rep.report()


# ---------------------------------------------------------------------------
# (1 + x)^(1/p)
# ---------------------------------------------------------------------------


def dwork_suite(prime: int = 2, order: int = 2000,
                tolerance: Fraction = DEFAULT_TOLERANCE) -> SuiteReport:
    check_prime(prime)
    _require_order(order, 16)
    p, tolerance = prime, Fraction(tolerance)
    rep = _Builder("dwork", p, order)
    s = TruncatedSeries.of(binom_series(Fraction(1, p), order + 1))
    rep.add("a_0 = 1", 1, s[0], s[0] == 1, "binomial series")
    rep.add(f"a_1 = 1/{p}", Fraction(1, p), s[1], s[1] == Fraction(1, p), "C(1/p, 1)")
    f = parse_poly(f"Y^{p}-1-X")
    bc = branch_containment(f, profile(s, p), tolerance)
    target = Fraction(-p, p - 1)
    est = bc.estimate
    rep.add(f"tail hull slope within {tolerance} of -p/(p-1)", target, est.hull_slope_tail,
            abs(est.hull_slope_tail - target) <= tolerance, "radius p^(-p/(p-1))")
    rep.add(f"tail window min v/n within {tolerance} of -p/(p-1)", target, est.window_min_ratio,
            abs(est.window_min_ratio - target) <= tolerance, "radius p^(-p/(p-1))")
    want = (0, (Fraction(0),) * (p - 1))
    got = (bc.branch.zero_multiplicity, bc.branch.valuations)
    rep.add("branch valuations", _fmt_branch(*want), _fmt_branch(*got), got == want,
            "discriminant proportional to (1+x)^(p-1): only branch point x = -1")
    rep.add("branch containment", RADIUS_BELOW, bc.verdict, bc.verdict == RADIUS_BELOW,
            "branch point -1 lies outside the radius")
    return rep.report()


# ---------------------------------------------------------------------------
# y^(p-1) (y - 1) = x
# ---------------------------------------------------------------------------


def wild_suite(prime: int = 3, order: int = 1000,
               tolerance: Fraction = DEFAULT_TOLERANCE) -> SuiteReport:
    check_prime(prime)
    _require_order(order, 16)
    p, tolerance = prime, Fraction(tolerance)
    rep = _Builder("wild", p, order)
    f = parse_poly(f"Y^{p - 1}*(Y-1)-X")
    slope = partial_y(f).evaluate(0, 1)
    rep.add("simple root: f(0,1) = 0 and f_Y(0,1) = 1", "0, 1", f"{f.evaluate(0, 1)}, {slope}",
            f.evaluate(0, 1) == 0 and slope == 1, "expansion point y(0) = 1")
    s = hensel_expand(f, 1, order)
    pr = profile(s, p)
    rep.add("a_0 = 1", 1, s[0], s[0] == 1, "a_0 = 1")
    rng = range(order + 1)
    rep.first_failure(f"v_{p}(a_n) >= 0", "all n", _first(lambda n: pr.values[n] >= 0, rng),
                      "series lies in Z[[x]]")
    units = [n for n in rng if pr.values[n] == 0]
    missing, k = None, 0
    while p**k <= order:
        lo, hi = p**k, min(p ** (k + 1) - 1, order)
        i = bisect.bisect_left(units, lo)
        if i == len(units) or units[i] > hi:
            missing = lo
            break
        k += 1
    tail_units = sum(1 for n in units if n >= pr.tail_start())
    rep.add(f"a unit coefficient in every block [p^k, p^(k+1)) up to {order}",
            "every block", "every block" if missing is None else f"none in block from {missing}",
            missing is None, "radius of convergence 1")
    rep.add("unit coefficients in the tail window (count)", "reported", tail_units, True,
            "finite evidence, no target")
    bc = branch_containment(f, pr, tolerance)
    rep.add("branch valuation -p present", -p,
            _fmt_branch(bc.branch.zero_multiplicity, bc.branch.valuations),
            Fraction(-p) in bc.branch.valuations, "|rho|_p = p^p")
    rep.add(f"tail hull slope within {tolerance} of 0", 0, bc.estimate.hull_slope_tail,
            abs(bc.estimate.hull_slope_tail) <= tolerance, "radius of convergence 1")
    rep.add("branch containment", RADIUS_BELOW, bc.verdict, bc.verdict == RADIUS_BELOW,
            "radius smaller than the branch distance p^p")
    return rep.report()


# ---------------------------------------------------------------------------
# gamma pairs:  a_m = C(g1, m) C(g2, m)
# ---------------------------------------------------------------------------


def gamma_valuations(rule: ExponentRule, order: int) -> list:
    g1, g2 = gamma_pair(rule)
    return [padic_binom_val(g1, m) + padic_binom_val(g2, m) for m in range(order + 1)]


def _lemma_bound(exps: list[int], m: int) -> int:
    """a_M - b_N where 2^{b_N} is the top bit of m and M is least with
    m <= 2^{a_0} + ... + 2^{a_M}."""
    partial, M = 0, 0
    while True:
        partial += 1 << exps[M]
        if m <= partial:
            return exps[M] - (m.bit_length() - 1)
        M += 1


def _validate_rule(rule: ExponentRule) -> None:
    if rule.tail_gap == 1:
        raise UsageError(f"{rule.name}: exponents eventually consecutive, so sum 2^a_n is a "
                         "negative integer, not a sparse 2-adic integer")


def gamma_suite(rule: ExponentRule | None = None, order: int = 1 << 17,
                identity_limit: int = 10_000,
                tolerance: Fraction = DEFAULT_TOLERANCE) -> SuiteReport:
    rule = ExponentRule.quadratic() if rule is None else rule
    _validate_rule(rule)
    _require_order(order, 16)
    rep = _Builder(f"gamma[{rule.name}]", 2, order)
    g1, g2 = gamma_pair(rule)
    v = gamma_valuations(rule, order)
    # exact values at m = 2^{a_j}
    j, bad, seen = 0, None, []
    while (1 << rule.term(j)) <= order:
        m = 1 << rule.term(j)
        want = rule.term(j + 1) - rule.term(j)
        seen.append(f"v(a_{m})={v[m]}")
        if v[m] != want and bad is None:
            bad = m
        j += 1
    rep.first_failure("v_2(a_m) = a_{j+1} - a_j at m = 2^{a_j}", f"{j} exact values",
                      bad, "valuation at powers of 2", "first mismatch at m=")
    rep.add("values at m = 2^{a_j}", "reported", "; ".join(seen), True, "valuation table")
    # lower bounds
    top = order.bit_length() + 1
    n_needed = rule.index_reaching(top) + 2
    e1 = [rule.term(2 * i) for i in range(n_needed)]
    e2 = [rule.term(2 * i + 1) for i in range(n_needed)]
    full = [rule.term(i) for i in range(2 * n_needed)]

    def lemma_ok(m: int) -> bool:
        return (padic_binom_val(g1, m) >= _lemma_bound(e1, m)
                and padic_binom_val(g2, m) >= _lemma_bound(e2, m))

    rep.first_failure("2-adic binomial lower bound a_M - b_N for each gamma", "every m",
                      _first(lemma_ok, range(1, order + 1)), "lower bound via Kummer carries",
                      "first failure at m=")

    def prop_ok(m: int) -> bool:
        partial, M = 0, 0
        while m > partial + (1 << full[M]):
            partial += 1 << full[M]
            M += 1
        return v[m] >= full[M + 1] - full[M]

    rep.first_failure("v_2(a_m) >= a_{M+1} - a_M", "every m",
                      _first(prop_ok, range(1, order + 1)), "combined lower bound",
                      "first failure at m=")
    # recurrence (m+1)^2 a_{m+1} = (g1 - m)(g2 - m) a_m in valuations
    lim = min(order - 1, identity_limit)

    def identity_ok(m: int) -> bool:
        lhs = 2 * vp_int(m + 1, 2) + v[m + 1]
        return lhs == padic_sub_val(g1, m) + padic_sub_val(g2, m) + v[m]

    rep.first_failure(f"2 v(m+1) + v(a_(m+1)) = v(g1-m) + v(g2-m) + v(a_m) for m <= {lim}",
                      "exact identity", _first(identity_ok, range(lim + 1)),
                      "hypergeometric recurrence", "first failure at m=")
    bt = boundary_and_transcendence(ValuationProfile.from_values(2, v), tolerance=tolerance)
    rep.add("convergence on the closed unit disk (evidence)", True,
            f"{bt.closed_unit_disk_convergence_evidence} (tail min {_fmt_val(bt.tail_min_valuation)}"
            f" at {list(bt.convergence_witnesses)[:4]}, head min {_fmt_val(bt.head_min_valuation)})",
            bt.closed_unit_disk_convergence_evidence, "|a_m|_2 -> 0")
    rep.add("liminf v/n = 0 (evidence)", True,
            f"{bt.liminf_zero_evidence} (min ratio {bt.window_min_ratio} at "
            f"{list(bt.liminf_witnesses)[:4]})",
            bt.liminf_zero_evidence, "radius exactly 1")
    rep.add("transcendence flag (evidence)", True, bt.transcendence_flag, bt.transcendence_flag,
            "both flags together")
    return rep.report()


# ---------------------------------------------------------------------------
# a_0 = 1, a_{n+1} = a_n + ceil(beta 2^{a_n})
# ---------------------------------------------------------------------------


def beta_suite(beta: RationalLike = 1, j_max: int = 2) -> SuiteReport:
    beta = Fraction(beta)
    if j_max < 0:
        raise UsageError("j_max must be >= 0")
    rule = ExponentRule.beta(beta)
    terms = rule.terms(j_max + 2)  # raises the guard error when too large
    rep = _Builder(f"beta[{beta}]", 2, 1 << terms[j_max])
    rep.add("sequence prefix", "reported", ", ".join(map(str, terms)), True,
            "a_0 = 1, a_{n+1} = a_n + ceil(beta 2^{a_n})")
    if beta == 1:
        want = [1, 3, 11, 2059][: len(terms)]
        rep.add("prefix for beta = 1", want, terms[: len(want)], terms[: len(want)] == want,
                "direct recursion")
    g1, g2 = gamma_pair(rule)
    for j in range(j_max + 1):
        m = 1 << terms[j]
        val = padic_binom_val(g1, m) + padic_binom_val(g2, m)
        ratio = Fraction(val, m)
        want = Fraction(terms[j + 1] - terms[j], m)
        rep.add(f"v_2(a_m)/m at m = 2^{terms[j]}", want, ratio, ratio == want,
                "valuation at powers of 2")
        err = Fraction(1, m)
        rep.add(f"ratio within 2^-{terms[j]} of beta (j={j})", f"|ratio - {beta}| <= {err}",
                abs(ratio - beta), 0 <= ratio - beta <= err, "ceiling rounding")
    return rep.report()


# ---------------------------------------------------------------------------
# s^(2^k) = 1 + 2^(k+1) Delta
# ---------------------------------------------------------------------------

POWER_DELTA_BITS = 24


def power_lemma_delta(order: int) -> TruncatedSeries:
    """delta = sum_{m >= 1} t_m x^m with t_m = C(G1, m) C(G2, m) mod 2^24.

    G1, G2 are the integer truncations of the n^2 gamma pair below 2^64.
    Each t_m is even, so delta lies in 2Z x[[x]].
    """
    g1, g2 = gamma_pair(ExponentRule.quadratic())
    G1, G2 = g1.truncation(64), g2.truncation(64)
    mod = 1 << POWER_DELTA_BITS
    coeffs = [0]
    c1 = c2 = 1
    for m in range(1, order + 1):
        c1 = c1 * (G1 - m + 1) // m
        c2 = c2 * (G2 - m + 1) // m
        coeffs.append(c1 * c2 % mod)
    return TruncatedSeries.of(coeffs)


def power_lemma_suite(k_max: int = 4, order: int = 256) -> SuiteReport:
    if not 0 <= k_max <= 6:
        raise UsageError("k_max must lie in 0..6")
    _require_order(order, 1)
    rep = _Builder("power-lemma", 2, order)
    delta = power_lemma_delta(order)
    rep.first_failure("delta in 2Z x[[x]]", "delta(0) = 0 and even coefficients",
                      _first(lambda n: delta[n] % 2 == 0, range(order + 1))
                      if delta[0] == 0 else 0, "sample from the gamma series")
    s = TruncatedSeries.of([1 + 4 * delta[0]] + [4 * c for c in delta.coeffs[1:]])
    for k in range(k_max + 1):
        big = pow(s, 1 << k)
        step_bad = _first(lambda m: kummer_binom_val(1 << k, m, 2) + 2 * m >= k + 2,
                          range(1, (1 << k) + 1))
        rep.first_failure(f"v_2(C(2^{k}, m)) + 2m >= {k + 2} for 1 <= m <= 2^{k}", "every m",
                          step_bad, "Kummer's theorem", "first failure at m=")
        mod = 1 << (k + 2)
        bad = None if big[0] == 1 else 0
        if bad is None:
            bad = _first(lambda n: big[n].denominator == 1 and big[n].numerator % mod == 0,
                         range(1, order + 1))
        rep.first_failure(f"s^(2^{k}) = 1 + 2^{k + 1} Delta with Delta in 2Z[[x]]",
                          f"constant 1, other coefficients divisible by 2^{k + 2}", bad,
                          "binomial expansion of (1 + 4 delta)^(2^k)")
    return rep.report()


# ---------------------------------------------------------------------------
# c_m = sum_{r+s=m} a^r b^s C(alpha, r) C(beta, s)
# ---------------------------------------------------------------------------


def _is_natural(q: Fraction) -> bool:
    return q.denominator == 1 and q >= 0


def ex2_coefficients(a, b, alpha, beta, order: int) -> TruncatedSeries:
    """Coefficients of (1 + a x)^alpha (1 + b x)^beta."""
    left = rescale(TruncatedSeries.of(binom_series(alpha, order + 1)), a)
    right = rescale(TruncatedSeries.of(binom_series(beta, order + 1)), b)
    return mul(left, right)


def ex2_suite(a: RationalLike = 1, b: RationalLike = 3, alpha: RationalLike = Fraction(1, 3),
              beta: RationalLike = Fraction(1, 5), prime: int = 2,
              order: int = 500) -> SuiteReport:
    a, b, alpha, beta = map(Fraction, (a, b, alpha, beta))
    p = check_prime(prime)
    _require_order(order, 16)
    if a == b:
        raise UsageError("ex2 needs a != b")
    if vp(a, p) != 0 or vp(b, p) != 0:
        raise UsageError(f"a and b must be {p}-adic units")
    for name, q in (("alpha", alpha), ("beta", beta)):
        if q.denominator % p == 0:
            raise UsageError(f"{name} = {q} is not a {p}-adic integer")
    if _is_natural(alpha) and _is_natural(beta):
        raise UsageError("alpha and beta must not both be natural numbers")
    rep = _Builder("ex2", p, order)
    c = ex2_coefficients(a, b, alpha, beta, order)
    pr = profile(c, p)
    vals = pr.values
    rep.first_failure(f"v_{p}(c_m) >= 0", "all m", _first(lambda m: vals[m] >= 0,
                      range(order + 1)), "binomial coefficients of p-adic integers")
    lo = pr.tail_start()
    head = [x for x in vals[1:lo] if x != INF]
    tail = [(m, x) for m, x in enumerate(vals) if m >= lo and x != INF]
    tail_min = min((x for _, x in tail), default=INF)
    head_min = min(head, default=INF)
    witnesses = [m for m, x in tail if x == tail_min][:8]
    rep.add("tail minimum of v_p(c_m) does not exceed the head minimum",
            f"<= {_fmt_val(head_min)}", f"{_fmt_val(tail_min)} at m in {witnesses}",
            tail_min <= head_min, "c_m does not tend to 0 (evidence)")
    return rep.report()


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable[..., SuiteReport]] = {
    "cubic": cubic_suite,
    "fuss-catalan": fuss_catalan_suite,
    "dwork": dwork_suite,
    "wild": wild_suite,
    "gamma": gamma_suite,
    "beta": beta_suite,
    "power-lemma": power_lemma_suite,
    "ex2": ex2_suite,
}


def run_all() -> list[SuiteReport]:
    """Every suite at its default parameters."""
    return [fn() for fn in SUITES.values()]
