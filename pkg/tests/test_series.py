from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from padic_lab.bivariate import BivarPoly, parse_poly
from padic_lab.errors import NormalizationError, NotSimpleRootError, UsageError
from padic_lab.series import (
    TruncatedSeries,
    _schoolbook,
    compose,
    expand_by_recurrence,
    hensel_expand,
    int_convolve,
    mul,
    normalize_at_root,
    pow,
    recenter,
    recurrence_expand,
    rescale,
    verify_root,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
series = st.lists(rationals, min_size=1, max_size=12).map(TruncatedSeries.of)

SUITE_POLYS = [
    ("Y^3-3*Y+X-2", 2),
    ("Y^2*(Y+1)-X", -1), ("Y^3*(Y+1)-X", -1), ("Y^5*(Y+1)-X", -1),
    ("Y^2-1-X", 1), ("Y^3-1-X", 1), ("Y^5-1-X", 1),
    ("Y*(Y-1)-X", 1), ("Y^2*(Y-1)-X", 1),
    ("Y^2+Y-8*X", 0), ("Y^2+Y-27*X", 0),
]


def generic_binom(beta, m):
    out = Fraction(1)
    for i in range(m):
        out = out * (beta - i) / (i + 1)
    return out


def sympy_series(expr, n):
    x = sympy.Symbol("x")
    ser = sympy.series(expr(x), x, 0, n + 1).removeO()
    return [Fraction(str(ser.coeff(x, k))) for k in range(n + 1)]


class TestTruncatedSeries:
    def test_order_is_explicit(self):
        s = TruncatedSeries.of([1, 2, 0, 0])
        assert s.order == 3 and s.coeffs[-1] == 0
        assert TruncatedSeries.of([1], order=4).coeffs == (1, 0, 0, 0, 0)
        assert s.truncate(1).coeffs == (1, 2)
        with pytest.raises(UsageError):
            s.truncate(5)
        with pytest.raises(UsageError):
            TruncatedSeries(())

    def test_max_bits(self):
        assert TruncatedSeries.of([Fraction(1, 1024), 3]).max_bits() == 11


class TestProducts:
    def test_examples(self):
        assert mul(TruncatedSeries.of([1, 1]), TruncatedSeries.of([1, -1])).coeffs == (1, 0)
        assert pow(TruncatedSeries.of([1, 4]), 2).coeffs == (1, 8)
        assert pow(TruncatedSeries.of([1, 4, 0]), 2).coeffs == (1, 8, 16)
        assert pow(TruncatedSeries.of([3, 1]), 0).coeffs == (1, 0)

    def test_min_order(self):
        assert mul(TruncatedSeries.of([1, 1, 1]), TruncatedSeries.of([1, 1])).order == 1

    @given(st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=80),
           st.lists(st.integers(-10**30, 10**30), min_size=1, max_size=80),
           st.integers(1, 170))
    def test_kronecker_matches_schoolbook(self, a, b, n):
        assert int_convolve(a, b, n) == _schoolbook(a, b, n)

    @given(series, series)
    def test_commutative(self, s, t):
        assert mul(s, t) == mul(t, s)

    @given(series, st.integers(0, 8))
    def test_pow_by_squaring(self, s, q):
        want = TruncatedSeries.of([1], s.order)
        for _ in range(q):
            want = mul(want, s)
        assert pow(s, q) == want

    def test_power_lemma_shape(self):
        delta = TruncatedSeries.of([0, 2, -6, 4, 10, -2, 8])
        s = TruncatedSeries.of([1] + [4 * c for c in delta.coeffs[1:]])
        for k in range(5):
            S = pow(s, 2**k)
            assert S[0] == 1
            assert all(c.denominator == 1 and c.numerator % 2 ** (k + 2) == 0
                       for c in S.coeffs[1:])


class TestTransforms:
    def test_rescale_examples(self):
        assert rescale(TruncatedSeries.of([1, 1, 1]), 2).coeffs == (1, 2, 4)
        assert rescale(TruncatedSeries.of([0, 8, -64]), Fraction(1, 8)).coeffs == (0, 1, -1)

    @given(series, rationals, rationals)
    def test_rescale_multiplicative(self, s, mu, nu):
        assert rescale(s, mu * nu) == rescale(rescale(s, mu), nu)
        assert rescale(s, 1) == s

    def test_recenter_examples(self):
        assert recenter(TruncatedSeries.of([1, 2, 1]), 1, 2).coeffs == (4, 4, 1)
        assert recenter(TruncatedSeries.of([0, 1, 3]), -1, 2).coeffs == (2, -5, 3)
        with pytest.raises(UsageError):
            recenter(TruncatedSeries.of([1, 2]), 1, 2)

    @given(series, rationals)
    def test_recenter_invertible(self, s, x0):
        assert recenter(recenter(s, x0, s.order), -x0, s.order) == s
        assert recenter(s, 0, s.order) == s

    @given(series, rationals, rationals)
    def test_recenter_is_taylor_shift(self, s, x0, x):
        shifted = recenter(s, x0, s.order)
        assert sum(c * x**k for k, c in enumerate(shifted.coeffs)) == sum(
            c * (x + x0) ** k for k, c in enumerate(s.coeffs))


class TestHensel:
    def test_examples(self):
        assert hensel_expand(parse_poly("Y^3-3*Y+X-2"), 2, 1).coeffs == (2, Fraction(-1, 9))
        assert hensel_expand(parse_poly("Y^2-1-X"), 1, 2).coeffs == (1, Fraction(1, 2),
                                                                    Fraction(-1, 8))
        for p in (3, 5, 7):
            s = hensel_expand(parse_poly(f"Y^{p}*(Y+1)-X"), -1, 2)
            assert s.coeffs == (-1, -1, p)

    def test_even_exponent_sign(self):
        # at p = 2 the branch through -1 starts -1 + x: t - 2t^2 + t^3 = x
        assert hensel_expand(parse_poly("Y^2*(Y+1)-X"), -1, 2).coeffs == (-1, 1, 2)

    def test_errors(self):
        with pytest.raises(NotSimpleRootError) as e:
            hensel_expand(parse_poly("Y^2-1-X"), 2, 4)
        assert e.value.kind == "not_a_root"
        with pytest.raises(NotSimpleRootError) as e:
            hensel_expand(parse_poly("Y^2-X"), 0, 4)
        assert e.value.kind == "multiple_root"

    @pytest.mark.parametrize("beta", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5)])
    def test_binomial_roots(self, beta):
        q = beta.denominator
        s = hensel_expand(parse_poly(f"Y^{q}-1-X"), 1, 60)
        assert list(s.coeffs) == [generic_binom(beta, n) for n in range(61)]

    def test_against_sympy_series(self):
        # y^2 + y = x has the root (sqrt(1 + 4x) - 1) / 2 through 0
        got = hensel_expand(parse_poly("Y^2+Y-X"), 0, 12)
        want = sympy_series(lambda x: (sympy.sqrt(1 + 4 * x) - 1) / 2, 12)
        assert list(got.coeffs) == want

    @pytest.mark.parametrize("text, y0", SUITE_POLYS)
    def test_verify_root(self, text, y0):
        f = parse_poly(text)
        for n in (0, 1, 7, 40):
            assert verify_root(f, hensel_expand(f, y0, n))

    def test_verify_root_detects_perturbation(self):
        f = parse_poly("Y^2-1-X")
        s = hensel_expand(f, 1, 50)
        assert verify_root(f, s)
        bad = list(s.coeffs)
        bad[37] += Fraction(1, 10**9)
        assert not verify_root(f, TruncatedSeries.of(bad))

    def test_compose(self):
        f = parse_poly("Y^2+X*Y+3")
        s = TruncatedSeries.of([1, 2, 0])
        # (1+2x)^2 + x(1+2x) + 3 = 4 + 5x + 6x^2
        assert compose(f, s) == [4, 5, 6]


class TestRecurrence:
    def test_examples(self):
        assert recurrence_expand(parse_poly("Y-X"), 3).coeffs == (0, 1, 0, 0)
        assert recurrence_expand(parse_poly("Y^2+Y-8*X"), 3).coeffs == (0, 8, -64, 1024)

    def test_normalization_errors_name_coefficient(self):
        with pytest.raises(NormalizationError) as e:
            recurrence_expand(parse_poly("Y^2+Y+1-X"), 4)
        assert e.value.coefficient == "c_0(0)"
        with pytest.raises(NormalizationError) as e:
            recurrence_expand(parse_poly("Y^2+2*Y-X"), 4)
        assert e.value.coefficient == "c_1(0)"

    def test_normalized_cubic(self):
        f = parse_poly("Y^3-3*Y+X-2")
        g, b = normalize_at_root(f, 2)
        assert b == 9 and g.coeff(0, 0) == 0 and g.coeff(0, 1) == 1
        rho = recurrence_expand(g, 64)
        unshifted = [2 + b * rho[0]] + [b * c for c in rho.coeffs[1:]]
        assert unshifted == list(hensel_expand(f, 2, 64).coeffs)

    @pytest.mark.parametrize("text, y0", SUITE_POLYS)
    def test_oracle_equivalence(self, text, y0):
        f = parse_poly(text)
        assert expand_by_recurrence(f, y0, 96) == hensel_expand(f, y0, 96)

    @settings(max_examples=30)
    @given(st.lists(rationals, min_size=1, max_size=4), st.lists(rationals, min_size=0, max_size=3),
           st.lists(rationals, min_size=0, max_size=3))
    def test_random_normalized(self, c0, c2, c3):
        # f = c_3(X) Y^3 + c_2(X) Y^2 + Y + X * c_0(X)
        coeffs = {(j + 1, 0): c for j, c in enumerate(c0)}
        coeffs[(0, 1)] = Fraction(1)
        coeffs.update({(j, 2): c for j, c in enumerate(c2)})
        coeffs.update({(j, 3): c for j, c in enumerate(c3)})
        f = BivarPoly(coeffs)
        assert recurrence_expand(f, 24) == hensel_expand(f, 0, 24)
