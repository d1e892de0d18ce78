"""Valuation profiles and what can honestly be read off them.

Conventions.  For s = sum a_n x^n write v_n = v_p(a_n) and
rho = liminf v_n / n.  The radius of convergence is R = p^rho, so a point
of valuation w lies strictly inside the disk exactly when w > -rho.

A truncated series only shows v_0..v_N, so every statistic here is an
estimate of rho with its provenance spelled out:

* ``hull_slope_tail``: slope of the lower convex hull of (n, v_n) on the
  segment covering the start of the tail window [ceil(N/2), N];
* ``window_min_ratio``: min of v_n / n over the tail window;
* ``lower_bound``: min of v_n / n over 1 <= n <= N.

Zero coefficients (v = +inf) are ignored throughout.  A profile whose whole
tail window is zero is treated as a polynomial (rho = +inf).
"""

from __future__ import annotations

import csv
import io
import os
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .bivariate import BivarPoly, BranchData, branch_point_valuations, newton_polygon
from .errors import NormalizationError, ParseError, UsageError
from .exact_arith import INF, Valuation, check_prime, vp
from .series import TruncatedSeries

DEFAULT_TOLERANCE = Fraction(1, 50)
MIN_FINITE_POINTS = 16
_MAX_WITNESSES = 32


@dataclass(frozen=True)
class ValuationProfile:
    prime: int
    points: tuple[tuple[int, Valuation], ...]

    def __post_init__(self):
        check_prime(self.prime)
        pts = tuple((int(n), v if v == INF else Fraction(v)) for n, v in self.points)
        if not pts:
            raise UsageError("a valuation profile needs at least one point")
        if [n for n, _ in pts] != list(range(len(pts))):
            raise UsageError("profile indices must run 0, 1, ..., N")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_values(cls, p: int, values: Iterable[Valuation]) -> ValuationProfile:
        return cls(p, tuple(enumerate(values)))

    @property
    def order(self) -> int:
        return len(self.points) - 1

    @property
    def values(self) -> list[Valuation]:
        return [v for _, v in self.points]

    def finite(self, lo: int = 0, hi: int | None = None) -> list[tuple[int, Fraction]]:
        hi = self.order if hi is None else hi
        return [(n, v) for n, v in self.points[lo:hi + 1] if v != INF]

    def tail_start(self) -> int:
        return max(1, -(-self.order // 2))

    def is_polynomial(self) -> bool:
        """True when every coefficient in the tail window vanishes."""
        return not self.finite(self.tail_start())

    def shifted(self, k: Valuation) -> ValuationProfile:
        """Profile of the rescaled series x -> mu x with v_p(mu) = k."""
        return ValuationProfile(self.prime, tuple((n, v if v == INF else v + k * n)
                                                  for n, v in self.points))


def profile(s: TruncatedSeries, p: int) -> ValuationProfile:
    check_prime(p)
    return ValuationProfile(p, tuple((n, vp(c, p)) for n, c in enumerate(s.coeffs)))


@dataclass(frozen=True)
class RadiusEstimate:
    prime: int
    order: int
    tail_window: tuple[int, int]
    hull_slope_tail: Valuation
    window_min_ratio: Valuation
    lower_bound: Valuation
    polynomial: bool = False

    @property
    def estimate(self) -> Valuation:
        """The headline estimate of log_p R (the hull slope)."""
        return self.hull_slope_tail


def radius_estimate(pr: ValuationProfile) -> RadiusEstimate:
    lo, hi = pr.tail_start(), pr.order
    if pr.order >= 1 and pr.is_polynomial():
        return RadiusEstimate(pr.prime, pr.order, (lo, hi), INF, INF, _lower_bound(pr), True)
    pts = pr.finite()
    if len(pts) < MIN_FINITE_POINTS:
        raise UsageError(f"radius estimation needs at least {MIN_FINITE_POINTS} finite "
                         f"valuations, got {len(pts)}")
    hull = newton_polygon(pts)
    slope, _ = hull.segment_at(lo)
    window = min(v / n for n, v in pr.finite(lo, hi))
    return RadiusEstimate(pr.prime, pr.order, (lo, hi), slope, window, _lower_bound(pr))


def _lower_bound(pr: ValuationProfile) -> Valuation:
    ratios = [v / n for n, v in pr.finite(1)]
    return min(ratios) if ratios else INF


# ---------------------------------------------------------------------------
# boundary behaviour
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryVerdict:
    """Finite evidence for v_n -> inf together with liminf v_n / n = 0.

    Both flags are evidence only.  ``convergence_witnesses`` are the tail
    indices where v_n is smallest and ``liminf_witnesses`` those where
    v_n / n is smallest.
    """

    closed_unit_disk_convergence_evidence: bool
    liminf_zero_evidence: bool
    transcendence_flag: bool
    tail_min_valuation: Valuation
    head_min_valuation: Valuation
    window_min_ratio: Valuation
    convergence_witnesses: tuple[int, ...]
    liminf_witnesses: tuple[int, ...]
    threshold: Fraction
    tolerance: Fraction
    polynomial: bool = False


def _argmins(pairs: list[tuple[int, Fraction]]) -> tuple[Valuation, tuple[int, ...]]:
    if not pairs:
        return INF, ()
    best = min(v for _, v in pairs)
    return best, tuple(n for n, v in pairs if v == best)[:_MAX_WITNESSES]


def boundary_and_transcendence(pr: ValuationProfile, threshold: Fraction = Fraction(1),
                               tolerance: Fraction = DEFAULT_TOLERANCE) -> BoundaryVerdict:
    threshold, tolerance = Fraction(threshold), Fraction(tolerance)
    est = radius_estimate(pr)
    lo, hi = est.tail_window
    head_min, _ = _argmins(pr.finite(1, lo - 1))
    if est.polynomial:
        return BoundaryVerdict(True, False, False, INF, head_min, INF, (), (),
                               threshold, tolerance, True)
    tail = pr.finite(lo, hi)
    tail_min, conv_w = _argmins(tail)
    ratio, lim_w = _argmins([(n, v / n) for n, v in tail])
    converging = tail_min >= threshold and tail_min > head_min
    liminf_zero = ratio <= tolerance
    return BoundaryVerdict(converging, liminf_zero, converging and liminf_zero, tail_min,
                           head_min, ratio, conv_w, lim_w, threshold, tolerance)


# ---------------------------------------------------------------------------
# branch points against the radius
# ---------------------------------------------------------------------------

ALL_INSIDE = "all_branches_inside"
RADIUS_BELOW = "radius_below_branches"
UNDETERMINED = "undetermined"

_VERDICT_TEXT = {
    ALL_INSIDE: "every finite branch point lies strictly inside the disk of convergence",
    RADIUS_BELOW: "every nonzero branch point lies outside the disk: the radius is smaller "
                  "than the branch distance",
    UNDETERMINED: "finite data does not separate the radius from the branch points",
}


@dataclass(frozen=True)
class BranchVerdict:
    """Comparison of branch-point valuations with the radius.

    ``verdict`` is one of ``all_branches_inside`` (every branch valuation w
    exceeds minus the certified lower bound), ``radius_below_branches``
    (every nonzero branch valuation is below minus the estimate by more
    than the tolerance) or ``undetermined``.  ``bracketed`` records whether
    some branch point sits at or inside the estimated radius and some at or
    outside it; ``radius_matches_branch`` whether one sits on it.
    """

    verdict: str
    description: str
    branch: BranchData
    estimate: RadiusEstimate
    bracketed: bool
    radius_matches_branch: bool
    tolerance: Fraction


def branch_containment(f: BivarPoly, pr: ValuationProfile,
                       tolerance: Fraction = DEFAULT_TOLERANCE) -> BranchVerdict:
    tolerance = Fraction(tolerance)
    branch = branch_point_valuations(f, pr.prime)
    est = radius_estimate(pr)
    ws = branch.all_valuations()
    nonzero = list(branch.valuations)
    rho, lower = est.hull_slope_tail, est.lower_bound
    if lower != INF and all(w > -lower for w in ws):
        verdict = ALL_INSIDE
    elif rho == INF:
        verdict = ALL_INSIDE if not nonzero else UNDETERMINED
    elif nonzero and all(w < -rho - tolerance for w in nonzero):
        verdict = RADIUS_BELOW
    else:
        verdict = UNDETERMINED
    if rho == INF:
        bracketed = matches = False
    else:
        bracketed = (any(w >= -rho - tolerance for w in ws)
                     and any(w <= -rho + tolerance for w in ws))
        matches = any(abs(w + rho) <= tolerance for w in nonzero)
    return BranchVerdict(verdict, _VERDICT_TEXT[verdict], branch, est, bracketed, matches,
                         tolerance)


# ---------------------------------------------------------------------------
# the v(a_m) >= eps*m + eta certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BdrCertificate:
    prime: int
    order: int
    x_degree: int
    eta: Fraction
    epsilon: Fraction
    h0: Valuation
    first_violation: int | None

    @property
    def certified(self) -> bool:
        return self.first_violation is None


def bdr_certificate(f: BivarPoly, s: TruncatedSeries, p: int) -> BdrCertificate:
    """Check v_p(a_m) >= eps*m + eta for 1 <= m <= order(s).

    f must have p-integral coefficients with c_0(0) = 0 and c_1(0) a
    p-adic unit, and the series must start at 0.  eta = min(1, min of the
    positive v_p(c_1j)) and eps = eta / (2D + 1) with D = deg_X f.  The
    smallest coefficient valuation h0 must be positive and at least
    eps*D + eta so the induction has its base; otherwise the input is
    rejected rather than reported as a violation.
    """
    check_prime(p)
    for (j, q), c in sorted(f.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if vp(c, p) < 0:
            raise NormalizationError(f"c_{{{q},{j}}}", f"coefficient {c} is not {p}-integral")
    if f.coeff(0, 0) != 0:
        raise NormalizationError("c_0(0)", "f(0,0) must vanish")
    if f.coeff(0, 1) == 0 or vp(f.coeff(0, 1), p) != 0:
        raise NormalizationError("c_1(0)", f"f_Y(0,0) = {f.coeff(0, 1)} must be a {p}-adic unit")
    if s.coeffs[0] != 0:
        raise NormalizationError("a_0", "the series must start at 0")
    D = f.deg_x
    c1 = [vp(f.coeff(j, 1), p) for j in range(1, D + 1)]
    eta = min([Fraction(1)] + [Fraction(v) for v in c1 if v != INF and v > 0])
    eps = eta / (2 * D + 1)
    vals = [vp(c, p) for c in s.coeffs[1:]]
    h0 = min(vals) if vals else INF
    if h0 != INF and (h0 <= 0 or h0 < eps * D + eta):
        raise NormalizationError("h_0", f"min v_p(a_m) = {h0} is below eps*D + eta = "
                                        f"{eps * D + eta}")
    violation = next((m for m, v in enumerate(vals, 1) if v < eps * m + eta), None)
    return BdrCertificate(p, s.order, D, eta, eps, h0, violation)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

CSV_HEADER = ("n", "vp_num", "vp_den", "inf")


def profile_to_csv(pr: ValuationProfile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for n, v in pr.points:
        w.writerow((n, "", "", 1) if v == INF else (n, v.numerator, v.denominator, 0))
    return buf.getvalue()


def profile_from_csv(text: str, p: int) -> ValuationProfile:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise ParseError(f"profile CSV must start with header {','.join(CSV_HEADER)}")
    points = []
    for line, row in enumerate(rows[1:], 2):
        if len(row) != 4:
            raise ParseError(f"line {line}: expected 4 fields, got {len(row)}")
        try:
            n = int(row[0])
            if row[3] == "1":
                if row[1] or row[2]:
                    raise ValueError("infinite row carries a value")
                points.append((n, INF))
            elif row[3] == "0":
                points.append((n, Fraction(int(row[1]), int(row[2]))))
            else:
                raise ValueError(f"inf flag {row[3]!r}")
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {line}: {exc}") from None
    return ValuationProfile(p, tuple(points))


def emit_profile(pr: ValuationProfile, path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(profile_to_csv(pr))


def read_profile(path: str | os.PathLike, p: int) -> ValuationProfile:
    with open(path, newline="") as fh:
        return profile_from_csv(fh.read(), p)
