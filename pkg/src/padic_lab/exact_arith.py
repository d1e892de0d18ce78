"""Exact p-adic valuations, base-p digit streams and binomial valuations.

Rationals are :class:`fractions.Fraction`.  A valuation is an ``int`` or
``Fraction`` when finite and :data:`INF` (``math.inf``) for the valuation of
zero; Python already orders and adds these the way valuations need
(``INF`` absorbs addition and compares above every rational).
"""

from __future__ import annotations

import bisect
import math
import threading
from collections.abc import Callable, Iterable, Sequence
from fractions import Fraction
from typing import Union

from .errors import DigitStreamError, GuardExceeded, UsageError

INF = math.inf
Valuation = Union[int, Fraction, float]
RationalLike = Union[int, Fraction]

# A borrow chain longer than this means the digit stream is broken.
MAX_BORROW_DIGITS = 10_000_000


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    return all(p % d for d in range(3, math.isqrt(p) + 1, 2))


def check_prime(p: int) -> int:
    if not is_prime(p):
        raise UsageError(f"{p!r} is not a prime")
    return p


def vp_int(n: int, p: int) -> Valuation:
    """Exponent of ``p`` in the integer ``n``; ``INF`` for ``n == 0``."""
    if n == 0:
        return INF
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        # gallop through p, p^2, p^4, ... so huge valuations stay cheap
        q, e = p, 1
        while n % (q * q) == 0:
            q, e = q * q, e * 2
        n //= q
        v += e
    return v


def vp(q: RationalLike, p: int) -> Valuation:
    """p-adic valuation of a rational number.

    >>> vp(4, 2), vp(Fraction(-1, 9), 2), vp(0, 5)
    (2, 0, inf)
    """
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def gauss_valuation(coeffs: Iterable[RationalLike], p: int) -> Valuation:
    """Order function of the Gauss norm: the least coefficient valuation."""
    check_prime(p)
    return min((vp(c, p) for c in coeffs), default=INF)


def base_digits(n: int, p: int) -> list[int]:
    """Base-``p`` digits of ``n >= 0``, least significant first (``[]`` for 0)."""
    if n < 0:
        raise UsageError("base_digits needs n >= 0")
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def digit_sum(n: int, p: int) -> int:
    if n < 0:
        raise UsageError("digit_sum needs n >= 0")
    if p == 2:
        return n.bit_count()
    return sum(base_digits(n, p))


def count_carries(a: int, b: int, p: int) -> int:
    """Number of carries when adding ``a`` and ``b`` in base ``p``."""
    carries = carry = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def kummer_binom_val(n: int, m: int, p: int) -> int:
    """v_p(C(n, m)) as the carry count of m + (n - m) in base p.

    The digit-sum form (S_p(m) + S_p(n-m) - S_p(n)) / (p - 1) is evaluated
    alongside and must agree.
    """
    check_prime(p)
    if not 0 <= m <= n:
        raise UsageError(f"kummer_binom_val needs 0 <= m <= n, got n={n}, m={m}")
    carries = count_carries(m, n - m, p)
    by_sums, rem = divmod(digit_sum(m, p) + digit_sum(n - m, p) - digit_sum(n, p), p - 1)
    if rem or by_sums != carries:
        raise ArithmeticError(f"carry count {carries} disagrees with digit sums at C({n},{m})")
    return carries


def binom_series_coeff(beta: RationalLike, m: int) -> Fraction:
    """beta (beta - 1) ... (beta - m + 1) / m!"""
    if m < 0:
        raise UsageError("binomial index must be >= 0")
    beta = Fraction(beta)
    num = Fraction(1)
    for i in range(m):
        num *= beta - i
    return num / math.factorial(m)


def binom_series(beta: RationalLike, n_terms: int) -> list[Fraction]:
    """[C(beta, 0), ..., C(beta, n_terms - 1)], built by the ratio recursion."""
    beta = Fraction(beta)
    out = []
    c = Fraction(1)
    for m in range(n_terms):
        if m:
            c = c * (beta - (m - 1)) / m
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# Exponent rules for sparse 2-adic integers  sum_i 2^{a_i}
# ---------------------------------------------------------------------------


class ExponentRule:
    """A strictly increasing sequence a_0 < a_1 < ... of non-negative integers.

    Terms are produced on demand by ``step(n, a_n) -> a_{n+1}`` and memoized.
    Terms above ``max_exponent`` raise :class:`UsageError`, which guards rules
    whose growth is doubly exponential.
    """

    def __init__(
        self,
        first: int,
        step: Callable[[int, int], int],
        name: str = "rule",
        prefix: Sequence[int] = (),
        max_exponent: int = 1 << 24,
    ):
        terms = list(prefix) or [first]
        if terms[0] < 0:
            raise UsageError(f"{name}: exponents must be non-negative")
        for a, b in zip(terms, terms[1:]):
            if b <= a:
                raise UsageError(f"{name}: exponents not strictly increasing ({a}, {b})")
        self.name = name
        self.max_exponent = max_exponent
        self.tail_gap: int | None = None
        self._step = step
        self._terms = terms
        self._overflow = ""
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"ExponentRule({self.name})"

    def _extend_to(self, n: int) -> None:
        with self._lock:
            terms = self._terms
            while len(terms) <= n:
                k = len(terms) - 1
                if self._overflow:
                    raise GuardExceeded(self._overflow)
                try:
                    nxt = self._step(k, terms[k])
                except GuardExceeded as exc:
                    self._overflow = str(exc)
                    raise
                if nxt <= terms[k]:
                    raise UsageError(f"{self.name}: exponents not strictly increasing at index {k + 1}")
                if nxt > self.max_exponent:
                    self._overflow = (f"{self.name}: exponent a_{k + 1} exceeds the guard "
                                      f"{self.max_exponent}")
                    raise GuardExceeded(self._overflow)
                terms.append(nxt)

    def term(self, n: int) -> int:
        if n >= len(self._terms):
            self._extend_to(n)
        return self._terms[n]

    def terms(self, count: int) -> list[int]:
        if count:
            self.term(count - 1)
        return self._terms[:count]

    def index_reaching(self, value: int) -> int:
        """Smallest n with a_n >= value.

        A term beyond the guard is known to be >= value whenever value is
        within the guard, so its index is returned without computing it.
        """
        n = bisect.bisect_left(self._terms, value)
        while n == len(self._terms):
            try:
                self._extend_to(n)
            except GuardExceeded:
                if value <= self.max_exponent:
                    return n
                raise
            n = bisect.bisect_left(self._terms, value)
        return n

    @classmethod
    def quadratic(cls) -> ExponentRule:
        """a_n = n^2."""
        return cls(0, lambda n, a: (n + 1) ** 2, name="n^2")

    @classmethod
    def affine(cls, c: int, g: int) -> ExponentRule:
        """a_0 = c, a_{n+1} = a_n + g (n + 1)."""
        if g <= 0:
            raise UsageError("affine rule needs g > 0")
        return cls(c, lambda n, a: a + g * (n + 1), name=f"affine:{c},{g}")

    @classmethod
    def beta(cls, beta: RationalLike, max_exponent: int = 1 << 24) -> ExponentRule:
        """a_0 = 1, a_{n+1} = a_n + ceil(beta 2^{a_n})."""
        beta = Fraction(beta)
        if beta <= 0:
            raise UsageError("beta rule needs beta > 0")

        def step(n: int, a: int) -> int:
            if a > max_exponent:
                raise GuardExceeded(f"beta:{beta}: a_{n} = {a} too large to step")
            return a + math.ceil(beta * (1 << a))

        return cls(1, step, name=f"beta:{beta}", max_exponent=max_exponent)

    @classmethod
    def listed(cls, prefix: Sequence[int], tail_gap: int) -> ExponentRule:
        """Explicit prefix, then constant gaps ``tail_gap``."""
        if not prefix:
            raise UsageError("list rule needs at least one exponent")
        if tail_gap <= 0:
            raise UsageError("list rule needs a positive tail gap")
        text = ",".join(map(str, prefix))
        rule = cls(prefix[0], lambda n, a: a + tail_gap, name=f"list:{text}+tail:{tail_gap}",
                   prefix=prefix)
        rule.tail_gap = tail_gap
        return rule

    def subsequence(self, offset: int, stride: int) -> ExponentRule:
        """The rule n -> a_{offset + stride n}, sharing this rule's memo."""
        parent = self
        return ExponentRule(
            parent.term(offset),
            lambda n, a: parent.term(offset + stride * (n + 1)),
            name=f"{self.name}[{offset}::{stride}]",
            max_exponent=self.max_exponent,
        )


# ---------------------------------------------------------------------------
# p-adic integers described by their digit streams
# ---------------------------------------------------------------------------


class PadicIntegerSpec:
    """A p-adic integer known through its base-p digits (pulled on demand)."""

    prime: int

    def digit(self, i: int) -> int:
        raise NotImplementedError

    def digits(self, count: int) -> list[int]:
        return [self.digit(i) for i in range(count)]

    def nonneg_value(self) -> int | None:
        """The value if it is a non-negative integer, else ``None``."""
        return None

    def next_nonzero(self, i: int) -> int:
        """Least position ``j >= i`` with a nonzero digit.

        Only called on integers that are not non-negative integers, so some
        nonzero digit always follows.
        """
        j = i
        while self.digit(j) == 0:
            j += 1
            if j - i > MAX_BORROW_DIGITS:
                raise DigitStreamError(f"no nonzero digit within {MAX_BORROW_DIGITS} of {i}")
        return j


class NonNegativeInteger(PadicIntegerSpec):
    def __init__(self, n: int, prime: int):
        if n < 0:
            raise UsageError("NonNegativeInteger needs n >= 0")
        self.n, self.prime = n, check_prime(prime)

    def __repr__(self) -> str:
        return f"NonNegativeInteger({self.n}, p={self.prime})"

    def digit(self, i: int) -> int:
        return (self.n // self.prime**i) % self.prime

    def nonneg_value(self) -> int:
        return self.n


class NegativeInteger(PadicIntegerSpec):
    """Digits of a negative integer; eventually all p - 1."""

    def __init__(self, n: int, prime: int):
        if n >= 0:
            raise UsageError("NegativeInteger needs n < 0")
        self.n, self.prime = n, check_prime(prime)

    def __repr__(self) -> str:
        return f"NegativeInteger({self.n}, p={self.prime})"

    def digit(self, i: int) -> int:
        # floor division gives the p-adic digits of negative numbers directly
        return (self.n // self.prime**i) % self.prime


class PRational(PadicIntegerSpec):
    """num/den with p not dividing den; digits are eventually periodic."""

    def __init__(self, num: int, den: int, prime: int):
        check_prime(prime)
        q = Fraction(num, den)
        if q.denominator % prime == 0:
            raise UsageError(f"{q} is not a {prime}-adic integer")
        self.value, self.prime = q, prime
        self._digits: list[int] = []
        self._rest = q
        self._inv = pow(q.denominator, -1, prime)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"PRational({self.value}, p={self.prime})"

    def _extend_to(self, i: int) -> None:
        p = self.prime
        with self._lock:
            while len(self._digits) <= i:
                rest = self._rest
                d = rest.numerator * self._inv % p
                self._digits.append(d)
                self._rest = (rest - d) / p

    def digit(self, i: int) -> int:
        if i >= len(self._digits):
            self._extend_to(i)
        return self._digits[i]

    def digits(self, count: int) -> list[int]:
        if count:
            self.digit(count - 1)
        return self._digits[:count]

    def nonneg_value(self) -> int | None:
        if self.value.denominator == 1 and self.value >= 0:
            return int(self.value)
        return None


class SparseExponentRule(PadicIntegerSpec):
    """The 2-adic integer sum_i 2^{a_i} for a strictly increasing rule."""

    prime = 2

    def __init__(self, rule: ExponentRule):
        self.rule = rule

    def __repr__(self) -> str:
        return f"SparseExponentRule({self.rule.name})"

    def next_nonzero(self, i: int) -> int:
        return self.rule.term(self.rule.index_reaching(i))

    def digit(self, i: int) -> int:
        return 1 if self.next_nonzero(i) == i else 0

    def digits(self, count: int) -> list[int]:
        out = [0] * count
        for n in range(self.rule.index_reaching(count)):
            out[self.rule.term(n)] = 1
        return out

    def truncation(self, bits: int) -> int:
        """The integer sum of 2^{a_i} over a_i < bits."""
        total = 0
        for n in range(self.rule.index_reaching(bits)):
            total |= 1 << self.rule.term(n)
        return total


def gamma_pair(rule: ExponentRule) -> tuple[SparseExponentRule, SparseExponentRule]:
    """gamma_1 = sum 2^{a_{2i}}, gamma_2 = sum 2^{a_{2i+1}}."""
    return (SparseExponentRule(rule.subsequence(0, 2)),
            SparseExponentRule(rule.subsequence(1, 2)))


def padic_binom_val(gamma: PadicIntegerSpec, m: int) -> Valuation:
    """v_p(C(gamma, m)) for a p-adic integer gamma.

    Counts the borrows of the base-p subtraction gamma - m, which equal the
    carries of m + (gamma - m).  Past the top digit of m a pending borrow runs
    through zero digits of gamma and stops at the next nonzero one.
    """
    if m < 0:
        raise UsageError("padic_binom_val needs m >= 0")
    p = gamma.prime
    value = gamma.nonneg_value()
    if value is not None:
        return INF if m > value else kummer_binom_val(value, m, p)
    md = base_digits(m, p)
    gd = gamma.digits(len(md))
    borrows = borrow = 0
    for g, d in zip(gd, md):
        borrow = 1 if g - d - borrow < 0 else 0
        borrows += borrow
    if borrow:
        borrows += gamma.next_nonzero(len(md)) - len(md)
    return borrows


def padic_sub_val(gamma: PadicIntegerSpec, m: int) -> Valuation:
    """v_p(gamma - m): the first position where the digits of gamma and m differ."""
    if m < 0:
        raise UsageError("padic_sub_val needs m >= 0")
    value = gamma.nonneg_value()
    if value is not None:
        return vp_int(value - m, gamma.prime)
    md = base_digits(m, gamma.prime)
    for i, (g, d) in enumerate(zip(gamma.digits(len(md)), md)):
        if g != d:
            return i
    return gamma.next_nonzero(len(md))
