"""Exact p-adic experiments with algebraic power series."""

__version__ = "0.1.0"

from .bivariate import BivarPoly, branch_point_valuations, newton_polygon, parse_poly
from .errors import (
    GuardExceeded,
    NormalizationError,
    NotSimpleRootError,
    NotSquarefreeError,
    PadicLabError,
    ParseError,
    UsageError,
)
from .exact_arith import INF, ExponentRule, kummer_binom_val, padic_binom_val, vp
from .radius import (
    ValuationProfile,
    bdr_certificate,
    boundary_and_transcendence,
    branch_containment,
    profile,
    radius_estimate,
)
from .series import TruncatedSeries, hensel_expand, recurrence_expand
from .suites import SUITES, SuiteReport

__all__ = [
    "INF", "BivarPoly", "ExponentRule", "GuardExceeded", "NormalizationError",
    "NotSimpleRootError", "NotSquarefreeError", "PadicLabError", "ParseError", "SUITES",
    "SuiteReport", "TruncatedSeries", "UsageError", "ValuationProfile", "bdr_certificate",
    "boundary_and_transcendence", "branch_containment", "branch_point_valuations",
    "hensel_expand", "kummer_binom_val", "newton_polygon", "padic_binom_val", "parse_poly",
    "profile", "radius_estimate", "recurrence_expand", "vp",
]
