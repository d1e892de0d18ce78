"""Truncated power series with rational coefficients.

A :class:`TruncatedSeries` is a_0 + a_1 x + ... + a_N x^N known modulo
x^(N+1).  Every operation states the order of its result explicitly; nothing
is trimmed or padded behind the caller's back.

Products go through integer arithmetic: both factors are brought to a common
denominator and the integer numerators are multiplied by Kronecker
substitution (one big-integer product), which keeps Hensel lifting at
orders in the thousands fast despite the coefficient growth.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .bivariate import BivarPoly, partial_y
from .errors import NormalizationError, NotSimpleRootError, UsageError
from .exact_arith import RationalLike

# Below this length schoolbook convolution beats packing.
_KRONECKER_MIN = 24


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise UsageError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Iterable[RationalLike], order: int | None = None) -> TruncatedSeries:
        """Series from coefficients, zero-padded or cut to ``order`` if given."""
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1 - len(cs)))[: order + 1]
        return cls(tuple(cs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise UsageError(f"cannot raise order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def max_bits(self) -> int:
        """Largest numerator or denominator bit length (size statistic)."""
        return max(max(c.numerator.bit_length(), c.denominator.bit_length()) for c in self.coeffs)

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(len(self), len(other))
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(len(self), len(other))
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return mul(self, other)


# ---------------------------------------------------------------------------
# integer convolution
# ---------------------------------------------------------------------------


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def _bias_word(slots: int, width: int) -> int:
    return int.from_bytes((1 << (8 * width - 1)).to_bytes(width, "little") * slots, "little")


def _pack(c: Sequence[int], width: int) -> int:
    bias = 1 << (8 * width - 1)
    raw = b"".join((x + bias).to_bytes(width, "little") for x in c)
    return int.from_bytes(raw, "little") - _bias_word(len(c), width)


def _unpack(value: int, slots: int, width: int) -> list[int]:
    bias = 1 << (8 * width - 1)
    raw = (value + _bias_word(slots, width)).to_bytes(slots * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") - bias for i in range(slots)]


def int_convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of two integer polynomials."""
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return _schoolbook(a, b, n)
    bound = (max(abs(x) for x in a).bit_length() + max(abs(x) for x in b).bit_length()
             + min(len(a), len(b)).bit_length() + 2)
    width = (bound + 7) // 8
    slots = len(a) + len(b) - 1
    out = _unpack(_pack(a, width) * _pack(b, width), slots, width)
    return (out + [0] * n)[:n]


def _common(cs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in cs))
    return [c.numerator * (den // c.denominator) for c in cs], den


def _mul_list(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    ai, da = _common(a)
    bi, db = _common(b)
    den = da * db
    return [Fraction(c, den) for c in int_convolve(ai, bi, n)]


# ---------------------------------------------------------------------------
# ring operations
# ---------------------------------------------------------------------------


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, correct to the smaller of the two orders."""
    n = min(len(s), len(t))
    return TruncatedSeries(tuple(_mul_list(s.coeffs, t.coeffs, n)))


def pow(s: TruncatedSeries, q: int) -> TruncatedSeries:  # noqa: A001 - series power
    """s^q by repeated squaring, at the order of s."""
    if q < 0:
        raise UsageError("series power needs q >= 0")
    result = TruncatedSeries.of([1], s.order)
    base = s
    while q:
        if q & 1:
            result = mul(result, base)
        q >>= 1
        if q:
            base = mul(base, base)
    return result


def rescale(s: TruncatedSeries, mu: RationalLike) -> TruncatedSeries:
    """x -> mu x: coefficient n becomes a_n mu^n."""
    mu = Fraction(mu)
    out, f = [], Fraction(1)
    for c in s.coeffs:
        out.append(c * f)
        f *= mu
    return TruncatedSeries(tuple(out))


def recenter(s: TruncatedSeries, x0: RationalLike, order: int) -> TruncatedSeries:
    """Taylor shift of the truncation: sum_m a_m (x + x0)^m, cut at ``order``.

    Coefficient r is sum_{m >= r} a_m C(m, r) x0^(m - r).
    """
    if order > s.order:
        raise UsageError(f"recenter order {order} exceeds series order {s.order}")
    x0 = Fraction(x0)
    n = s.order
    powers = [Fraction(1)]
    for _ in range(n):
        powers.append(powers[-1] * x0)
    out = []
    for r in range(order + 1):
        acc = Fraction(0)
        binom = 1  # C(m, r) for m = r, r+1, ...
        for m in range(r, n + 1):
            if m > r:
                binom = binom * m // (m - r)
            if s.coeffs[m]:
                acc += s.coeffs[m] * binom * powers[m - r]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def _poly_series(cq: Sequence[Fraction], n: int) -> list[Fraction]:
    return ([Fraction(c) for c in cq] + [Fraction(0)] * n)[:n]


def compose(f: BivarPoly, s: TruncatedSeries, n: int | None = None) -> list[Fraction]:
    """Coefficients of f(x, s(x)) modulo x^n (default: the order of s plus 1)."""
    n = len(s) if n is None else n
    cs = s.coeffs[:n]
    acc = [Fraction(0)] * n
    for cq in reversed(f.y_coeffs()):  # Horner in Y
        acc = _mul_list(acc, cs, n) if any(acc) else acc
        for j, c in enumerate(cq[:n]):
            acc[j] += c
    return acc


def verify_root(f: BivarPoly, s: TruncatedSeries) -> bool:
    """True iff f(x, s(x)) vanishes through the order of s."""
    return not any(compose(f, s))


def _inverse(h: Sequence[Fraction], n: int) -> list[Fraction]:
    """1/h modulo x^n by Newton doubling; h[0] must be nonzero."""
    g = [1 / Fraction(h[0])]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        hg = _mul_list(h[:prec], g, prec)
        corr = [-c for c in hg]
        corr[0] += 2
        g = _mul_list(g, corr, prec)
    return g


def _check_simple_root(f: BivarPoly, y0: Fraction) -> Fraction:
    if f.evaluate(0, y0) != 0:
        raise NotSimpleRootError("not_a_root", f"f(0, {y0}) = {f.evaluate(0, y0)} is not zero")
    slope = partial_y(f).evaluate(0, y0)
    if slope == 0:
        raise NotSimpleRootError("multiple_root", f"{y0} is a multiple root of f(0, Y)")
    return slope


def hensel_expand(f: BivarPoly, y0: RationalLike, order: int) -> TruncatedSeries:
    """The unique series root s of f(x, s) = 0 with s(0) = y0, mod x^(order+1).

    Newton iteration s <- s - f(s)/f_Y(s); the number of correct
    coefficients doubles each pass and all arithmetic is cut at the
    current precision.
    """
    if order < 0:
        raise UsageError("order must be >= 0")
    y0 = Fraction(y0)
    _check_simple_root(f, y0)
    fy = partial_y(f)
    target = order + 1
    s = [y0]
    prec = 1
    while prec < target:
        prec = min(2 * prec, target)
        cur = TruncatedSeries.of(s, prec - 1)
        num = compose(f, cur, prec)
        den = compose(fy, cur, prec)
        step = _mul_list(num, _inverse(den, prec), prec)
        s = [a - b for a, b in zip(cur.coeffs, step)]
    return TruncatedSeries(tuple(s))


def normalize_at_root(f: BivarPoly, y0: RationalLike) -> tuple[BivarPoly, Fraction]:
    """F*(X, Y) = b^-2 f(X, y0 + b Y) with b = f_Y(0, y0).

    F* has F*(0, 0) = 0 and F*_Y(0, 0) = 1, and the root of f through y0 is
    y0 + b * (root of F* through 0).
    """
    y0 = Fraction(y0)
    b = _check_simple_root(f, y0)
    return f.substitute_y(y0, b).scale(1 / (b * b)), b


def recurrence_expand(f: BivarPoly, order: int) -> TruncatedSeries:
    """Coefficients from a_n = -[x^n] f(x, a_0 + ... + a_{n-1} x^{n-1}).

    Requires f(0, 0) = 0 and f_Y(0, 0) = 1.  With a_0 = 0 each term
    c_qj a_{k_1} ... a_{k_q} of that coefficient uses only earlier a's, so
    the powers s^q are grown one coefficient per step and the formula holds
    from n = 1 on, with no separate base case.
    """
    cs = f.y_coeffs()
    if f.coeff(0, 0) != 0:
        raise NormalizationError("c_0(0)", f"f(0,0) = {f.coeff(0, 0)} must be 0")
    if f.coeff(0, 1) != 1:
        raise NormalizationError("c_1(0)", f"f_Y(0,0) = {f.coeff(0, 1)} must be 1")
    if order < 0:
        raise UsageError("order must be >= 0")
    d = len(cs) - 1
    a = [Fraction(0)] * (order + 1)
    # powers[q][k] = [x^k] s^q for q >= 2, grown incrementally
    powers = {q: [Fraction(0)] * (order + 1) for q in range(2, d + 1)}
    for n in range(1, order + 1):
        prev = a  # s^1
        for q in range(2, d + 1):
            pq = powers[q]
            # a_0 = 0, so [x^n] s^q needs a_1..a_{n-1} only
            pq[n] = sum((a[i] * prev[n - i] for i in range(1, n) if a[i] and prev[n - i]),
                        Fraction(0))
            prev = pq
        total = Fraction(0)
        c0 = cs[0] if cs else []
        if n < len(c0):
            total += c0[n]
        for j, c in enumerate(cs[1] if d >= 1 else []):
            if j and c and j <= n:
                total += c * a[n - j]
        for q in range(2, d + 1):
            pq = powers[q]
            for j, c in enumerate(cs[q]):
                if c and j < n:
                    total += c * pq[n - j]
        a[n] = -total
    return TruncatedSeries(tuple(a))


def expand_by_recurrence(f: BivarPoly, y0: RationalLike, order: int) -> TruncatedSeries:
    """Same series as :func:`hensel_expand`, computed through the recurrence."""
    g, b = normalize_at_root(f, y0)
    rho = recurrence_expand(g, order)
    out = [c * b for c in rho.coeffs]
    out[0] += Fraction(y0)
    return TruncatedSeries(tuple(out))
