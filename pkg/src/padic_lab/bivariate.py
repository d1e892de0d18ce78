"""Exact bivariate polynomials f(X, Y) over the rationals.

Also: the Y-resultant Res_Y(f, df/dY) by subresultant elimination over
Q[X], lower Newton polygons, and p-adic valuations of the roots of the
discriminant (the branch-point candidates of x on the curve f = 0).

Univariate polynomials in X are plain lists of Fractions, constant term
first, with no trailing zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NotSquarefreeError, ParseError, UsageError
from .exact_arith import INF, Valuation, check_prime, vp

XPoly = list  # list[Fraction], constant term first


# ---------------------------------------------------------------------------
# Q[X] arithmetic
# ---------------------------------------------------------------------------


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(a: Sequence, b: Sequence) -> XPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def psub(a: Sequence, b: Sequence) -> XPoly:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def pmul(a: Sequence, b: Sequence) -> XPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def ppow(a: Sequence, e: int) -> XPoly:
    out: XPoly = [Fraction(1)]
    base = list(a)
    while e:
        if e & 1:
            out = pmul(out, base)
        e >>= 1
        if e:
            base = pmul(base, base)
    return out


def pdivmod(a: Sequence, b: Sequence) -> tuple[XPoly, XPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a]
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = Fraction(b[-1])
    for shift in range(len(a) - len(b), -1, -1):
        c = rem[shift + len(b) - 1] / lead
        if c:
            quo[shift] = c
            for i, y in enumerate(b):
                rem[shift + i] -= c * y
    return _trim(quo), _trim(rem[: len(b) - 1])


def pdiv_exact(a: Sequence, b: Sequence) -> XPoly:
    q, r = pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def peval(a: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# BivarPoly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BivarPoly:
    """f = sum c[(j, q)] X^j Y^q with no stored zero coefficients."""

    coeffs: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (j, q), c in self.coeffs.items():
            if j < 0 or q < 0:
                raise UsageError("negative exponent in polynomial")
            c = Fraction(c)
            if c:
                clean[(j, q)] = c
        object.__setattr__(self, "coeffs", clean)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    @classmethod
    def constant(cls, c) -> BivarPoly:
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def x(cls) -> BivarPoly:
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> BivarPoly:
        return cls({(0, 1): Fraction(1)})

    @classmethod
    def from_y_coeffs(cls, polys: Sequence[Sequence]) -> BivarPoly:
        """Build from [c_0(X), c_1(X), ...] with f = sum c_q(X) Y^q."""
        return cls({(j, q): c for q, cq in enumerate(polys) for j, c in enumerate(cq)})

    @property
    def deg_y(self) -> int:
        return max((q for _, q in self.coeffs), default=-1)

    @property
    def deg_x(self) -> int:
        return max((j for j, _ in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, j: int, q: int) -> Fraction:
        return self.coeffs.get((j, q), Fraction(0))

    def y_coeffs(self) -> list[XPoly]:
        """[c_0(X), ..., c_d(X)] as X-polynomials."""
        d = self.deg_y
        out: list[list] = [[] for _ in range(d + 1)]
        for (j, q), c in self.coeffs.items():
            row = out[q]
            if len(row) <= j:
                row.extend([Fraction(0)] * (j + 1 - len(row)))
            row[j] = c
        return [_trim(r) for r in out]

    def __add__(self, other: BivarPoly) -> BivarPoly:
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BivarPoly(out)

    def __neg__(self) -> BivarPoly:
        return BivarPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: BivarPoly) -> BivarPoly:
        return self + (-other)

    def __mul__(self, other: BivarPoly) -> BivarPoly:
        out: dict = {}
        for (j1, q1), c1 in self.coeffs.items():
            for (j2, q2), c2 in other.coeffs.items():
                k = (j1 + j2, q1 + q2)
                out[k] = out.get(k, 0) + c1 * c2
        return BivarPoly(out)

    def __pow__(self, e: int) -> BivarPoly:
        if e < 0:
            raise UsageError("negative power of a polynomial")
        out = BivarPoly.constant(1)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> BivarPoly:
        return BivarPoly({k: v * c for k, v in self.coeffs.items()})

    def evaluate(self, x, y) -> Fraction:
        return sum((c * Fraction(x) ** j * Fraction(y) ** q for (j, q), c in self.coeffs.items()),
                   Fraction(0))

    def at_x(self, x) -> XPoly:
        """f(x, Y) as a polynomial in Y."""
        return [peval(cq, Fraction(x)) for cq in self.y_coeffs()]

    def substitute_y(self, shift, scale=1) -> BivarPoly:
        """f(X, shift + scale * Y)."""
        lin = BivarPoly({(0, 0): Fraction(shift), (0, 1): Fraction(scale)})
        out = BivarPoly()
        power = BivarPoly.constant(1)
        for q, cq in enumerate(self.y_coeffs()):
            if cq:
                out = out + BivarPoly.from_y_coeffs([cq]) * power
            power = power * lin
        return out

    def text(self) -> str:
        """Canonical text form; ``parse_poly(f.text()) == f``."""
        if not self.coeffs:
            return "0"
        parts = []
        for (j, q) in sorted(self.coeffs, key=lambda k: (-k[1], -k[0])):
            c = self.coeffs[(j, q)]
            mono = [v if e == 1 else f"{v}^{e}" for v, e in (("X", j), ("Y", q)) if e]
            mag = abs(c)
            if mono:
                body = "*".join(mono) if mag == 1 else "*".join([str(mag)] + mono)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.text()


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] in ".eE":
                raise ParseError("non-rational literal", j)
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch in "XY":
            tokens.append(("VAR", ch, i))
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
        elif ch == ".":
            raise ParseError("non-rational literal", i)
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
        i += 1
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            want = "integer" if kind == "INT" else repr(kind)
            got = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> BivarPoly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> BivarPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            acc = acc * self.factor()
        return acc

    def factor(self) -> BivarPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            base = base ** int(self.take("INT")[1])
        return base

    def atom(self) -> BivarPoly:
        kind, value, pos = self.peek()
        if kind == "INT":
            self.take("INT")
            num = int(value)
            if self.peek()[0] == "/":
                self.take("/")
                den_tok = self.take("INT")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2])
                return BivarPoly.constant(Fraction(num, den))
            return BivarPoly.constant(num)
        if kind == "VAR":
            self.take("VAR")
            return BivarPoly.x() if value == "X" else BivarPoly.y()
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        got = "end of input" if kind == "EOF" else repr(value)
        raise ParseError(f"unexpected {got}", pos)


def parse_poly(text: str) -> BivarPoly:
    """Parse a polynomial in X and Y.

    Tokens: integers, ``INT/INT`` rational literals, ``X``, ``Y``, ``^`` with
    a non-negative integer exponent, ``* + - ( )``.  Multiplication must be
    written out.
    """
    parser = _Parser(text)
    if parser.peek()[0] == "EOF":
        raise ParseError("empty polynomial", 0)
    poly = parser.expr()
    tok = parser.peek()
    if tok[0] != "EOF":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return poly


# ---------------------------------------------------------------------------
# Derivative, resultant, discriminant
# ---------------------------------------------------------------------------


def partial_y(f: BivarPoly) -> BivarPoly:
    return BivarPoly({(j, q - 1): c * q for (j, q), c in f.coeffs.items() if q})


def _prem(a: list[XPoly], b: list[XPoly]) -> list[XPoly]:
    """Pseudo-remainder of a by b as polynomials in Y over Q[X]."""
    db = len(b) - 1
    lb = b[-1]
    r = [list(c) for c in a]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [pmul(lb, c) for c in r]
        for i, c in enumerate(b):
            r[i + shift] = psub(r[i + shift], pmul(lr, c))
        while r and not r[-1]:
            r.pop()
        e -= 1
    factor = ppow(lb, e)
    return [pmul(factor, c) for c in r]


def resultant_y(f: BivarPoly, g: BivarPoly) -> XPoly:
    """Res_Y(f, g) in Q[X] via the subresultant PRS (no fractions in X)."""
    a, b = f.y_coeffs(), g.y_coeffs()
    if not a or not b:
        return []
    sign = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 and (len(b) - 1) % 2:
            sign = -1
    g_, h = [Fraction(1)], [Fraction(1)]
    while len(b) > 1:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        r = _prem(a, b)
        a = b
        if not r:
            return []
        div = pmul(g_, ppow(h, delta))
        b = [pdiv_exact(c, div) for c in r]
        g_ = a[-1]
        if delta:
            h = pdiv_exact(ppow(g_, delta), ppow(h, delta - 1))
    da = len(a) - 1
    res = pdiv_exact(ppow(b[0], da), ppow(h, da - 1)) if da else [Fraction(1)]
    return [c * sign for c in res]


def discriminant_y(f: BivarPoly) -> XPoly:
    """Res_Y(f, df/dY) as a polynomial in X.

    Vanishes where f(x0, Y) has a multiple root or drops degree; it equals
    the discriminant times +-c_d(X), see :func:`branch_point_valuations`.
    """
    if f.deg_y < 1:
        raise UsageError("discriminant_y needs deg_Y(f) >= 1")
    return resultant_y(f, partial_y(f))


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (index, valuation) points.

    ``segments`` holds (slope, horizontal length) pairs, slopes strictly
    increasing.
    """

    vertices: tuple[tuple[int, Fraction], ...]
    segments: tuple[tuple[Fraction, int], ...]

    @property
    def slopes(self) -> list[Fraction]:
        return [s for s, _ in self.segments]

    def segment_at(self, index: int) -> tuple[Fraction, int] | None:
        """The segment whose span [left, right) contains ``index``.

        Indices at or past the last vertex map to the final segment.
        """
        if not self.segments:
            return None
        for (x0, _), seg in zip(self.vertices, self.segments):
            if index < x0 + seg[1]:
                return seg
        return self.segments[-1]

    def value_at(self, index) -> Fraction:
        """Height of the polygon above ``index`` (interpolated)."""
        (x0, y0) = self.vertices[0]
        for (xa, ya), (xb, yb) in zip(self.vertices, self.vertices[1:]):
            if xa <= index <= xb:
                return ya + Fraction(yb - ya, xb - xa) * (index - xa)
        if index == x0:
            return y0
        raise UsageError(f"index {index} outside the polygon")


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(points: Iterable[tuple[int, Valuation]]) -> NewtonPolygon:
    """Lower convex hull; points with infinite valuation are skipped."""
    best: dict[int, Fraction] = {}
    for i, v in points:
        if v == INF:
            continue
        v = Fraction(v)
        if i not in best or v < best[i]:
            best[i] = v
    if not best:
        raise UsageError("newton_polygon needs at least one finite point")
    hull: list[tuple[int, Fraction]] = []
    for pt in sorted(best.items()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segments = tuple(
        (Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), segments)


def root_valuations(poly: Sequence, p: int) -> tuple[int, list[Fraction]]:
    """(multiplicity of the root 0, sorted valuations of the other roots).

    Convention: a segment of slope s and length l in the polygon of
    (i, v_p(e_i)) carries l roots of valuation -s.
    """
    poly = _trim([Fraction(c) for c in poly])
    if not poly:
        raise UsageError("zero polynomial has no root data")
    k = next(i for i, c in enumerate(poly) if c)
    rest = poly[k:]
    if len(rest) == 1:
        return k, []
    np_ = newton_polygon((i, vp(c, p)) for i, c in enumerate(rest))
    vals = []
    for slope, length in np_.segments:
        vals.extend([-slope] * length)
    return k, sorted(vals)


@dataclass(frozen=True)
class BranchData:
    """Root data of the discriminant of f with respect to Y.

    ``zero_multiplicity`` counts the root x = 0, ``valuations`` lists v_p of
    the nonzero roots.  Roots of the leading coefficient c_d(X) (where
    f(x0, Y) drops degree) are kept apart in the ``leading_*`` fields.
    """

    prime: int
    zero_multiplicity: int
    valuations: tuple[Fraction, ...]
    discriminant: tuple[Fraction, ...]
    leading_zero_multiplicity: int = 0
    leading_valuations: tuple[Fraction, ...] = ()

    def finite_nonzero(self) -> list[Fraction]:
        return list(self.valuations)

    def all_valuations(self) -> list[Valuation]:
        """Branch valuations with the root 0 entered as INF."""
        return [INF] * self.zero_multiplicity + list(self.valuations)


def branch_point_valuations(f: BivarPoly, p: int) -> BranchData:
    check_prime(p)
    if f.deg_y < 2:
        raise UsageError("branch_point_valuations needs deg_Y(f) >= 2")
    res = discriminant_y(f)
    if not res:
        raise NotSquarefreeError(f"discriminant of {f.text()} vanishes identically; "
                                 "f is not squarefree in Y")
    lead = f.y_coeffs()[-1]
    disc = pdiv_exact(res, lead)
    k, vals = root_valuations(disc, p)
    lk, lvals = (0, []) if len(lead) == 1 else root_valuations(lead, p)
    return BranchData(p, k, tuple(vals), tuple(disc), lk, tuple(lvals))
