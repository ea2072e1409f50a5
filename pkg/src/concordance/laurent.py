"""Exact Laurent polynomials in one variable ``t`` with rational coefficients.

Coefficients are :class:`fractions.Fraction` throughout; nothing here ever
touches floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Union

Rat = Fraction
Scalar = Union[int, Fraction]


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class ParseError(ValueError):
    """A polynomial string could not be parsed."""


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class LaurentPoly:
    """Finitely supported map ``exponent -> nonzero Fraction``.

    Instances are immutable and hashable. The zero polynomial has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, Fraction] = {}
        for e, c in items:
            c = as_rat(c)
            if c:
                e = int(e)
                acc[e] = acc.get(e, Fraction(0)) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_dense(cls, coeffs: Iterable[Scalar], shift: int = 0) -> "LaurentPoly":
        """Build from ascending coefficients ``[c0, c1, ...]`` times ``t**shift``."""
        return cls((i + shift, c) for i, c in enumerate(coeffs))

    # -- accessors --------------------------------------------------------
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    def coeff(self, e: int) -> Fraction:
        for k, c in self._terms:
            if k == e:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    @property
    def low(self) -> int:
        if not self._terms:
            raise DomainError("zero polynomial has no lowest exponent")
        return self._terms[0][0]

    @property
    def high(self) -> int:
        if not self._terms:
            raise DomainError("zero polynomial has no degree")
        return self._terms[-1][0]

    def span(self) -> int:
        """Difference between highest and lowest exponent."""
        return self.high - self.low

    def lead(self) -> Fraction:
        return self._terms[-1][1]

    def trailing(self) -> Fraction:
        return self._terms[0][1]

    def dense(self) -> list[Fraction]:
        """Ascending coefficients starting at the lowest exponent."""
        if not self._terms:
            return []
        out = [Fraction(0)] * (self.span() + 1)
        for e, c in self._terms:
            out[e - self.low] = c
        return out

    def denominators_lcm(self) -> int:
        m = 1
        for _, c in self._terms:
            m = m * c.denominator // gcd(m, c.denominator)
        return m

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive in Z[t, t^-1]."""
        if not self._terms:
            return Fraction(0)
        den = self.denominators_lcm()
        g = 0
        for _, c in self._terms:
            g = gcd(g, int(c * den))
        return Fraction(g, den)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise DomainError("only monomials are invertible in Q[t, t^-1]")
            (e, c), = self._terms
            return LaurentPoly({e * n: c ** n})
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c: Scalar) -> "LaurentPoly":
        c = as_rat(c)
        return LaurentPoly((e, c * k) for e, k in self._terms)

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def substitute_power(self, n: int) -> "LaurentPoly":
        """Return ``p(t**n)``."""
        return LaurentPoly((e * n, c) for e, c in self._terms)

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly((e - 1, e * c) for e, c in self._terms if e)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> list[list]:
        return [[e, str(c)] for e, c in self._terms]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if not isinstance(data, list):
            raise ParseError(f"expected a list of [exponent, coefficient] pairs, got {data!r}")
        try:
            return cls((int(e), as_rat(c)) for e, c in data)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed sparse polynomial {data!r}: {exc}") from None


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1)


# ---------------------------------------------------------------------------
# Named operations


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def involve(p: LaurentPoly) -> LaurentPoly:
    """The involution ``t -> t^-1``."""
    return LaurentPoly((-e, c) for e, c in p.terms())


def evaluate(p: LaurentPoly, q: Scalar) -> Fraction:
    q = as_rat(q)
    if q == 0:
        if any(e < 0 for e, _ in p.terms()):
            raise DomainError("cannot substitute t = 0 into a negative power of t")
        return p.coeff(0)
    return sum((c * q ** e for e, c in p.terms()), Fraction(0))


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical associate under ``±t^k``: lowest exponent 0, lowest coefficient positive."""
    if p.is_zero():
        raise DomainError("zero has no canonical associate")
    q = p.shift(-p.low)
    return -q if q.trailing() < 0 else q


def monic(p: LaurentPoly) -> LaurentPoly:
    """Associate under ``Q^* t^k``: lowest exponent 0 and leading coefficient 1."""
    if p.is_zero():
        raise DomainError("zero has no monic associate")
    q = p.shift(-p.low)
    return q.scale(1 / q.lead())


def primitive(p: LaurentPoly) -> LaurentPoly:
    """Associate under ``Q^* t^k`` with coprime integer coefficients and positive trailing term."""
    q = normalize_unit(p)
    return q.scale(1 / q.content())


def associated(p: LaurentPoly, q: LaurentPoly) -> bool:
    """True iff ``p = c t^k q`` for a nonzero rational ``c``."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return monic(p) == monic(q)


def divmod_poly(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division with remainder in Q[t]; both inputs must be ordinary polynomials."""
    if b.is_zero():
        raise DomainError("division by zero polynomial")
    if (a and a.low < 0) or b.low < 0:
        raise DomainError("divmod_poly expects polynomials without negative exponents")
    r = dict(a.terms())
    q: dict[int, Fraction] = {}
    db, lb = b.high, b.lead()
    bt = b.terms()
    while r:
        dr = max(r)
        if dr < db:
            break
        f = r[dr] / lb
        k = dr - db
        q[k] = f
        for e, c in bt:
            v = r.get(e + k, Fraction(0)) - f * c
            if v:
                r[e + k] = v
            else:
                r.pop(e + k, None)
    return LaurentPoly(q), LaurentPoly(r)


def to_poly(p: LaurentPoly) -> LaurentPoly:
    """Shift so the lowest exponent is 0 (zero stays zero)."""
    return p.shift(-p.low) if p else p


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """Quotient ``a / b`` in Q[t, t^-1] if it exists, else ``None``."""
    if b.is_zero():
        raise DomainError("division by zero polynomial")
    if a.is_zero():
        return ZERO
    q, r = divmod_poly(to_poly(a), to_poly(b))
    if r:
        return None
    return q.shift(a.low - b.low)


def lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Monic gcd over Q[t] after shifting both inputs to ordinary polynomials."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    x, y = to_poly(a), to_poly(b)
    while y:
        _, r = divmod_poly(x, y)
        x, y = y, r
    return monic(x)


def lp_xgcd(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """Return ``(g, s, u)`` with ``s*a + u*b = g`` monic, for ordinary polynomials."""
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = ONE, ZERO
    u0, u1 = ZERO, ONE
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    lc = r0.lead()
    return r0.scale(1 / lc), s0.scale(1 / lc), u0.scale(1 / lc)


def lp_lcm(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return monic(exact_div(to_poly(a) * to_poly(b), lp_gcd(a, b)))


def strip_t(p: LaurentPoly) -> LaurentPoly:
    """Remove the unit ``t^k`` so the lowest exponent is 0."""
    return to_poly(p)


# ---------------------------------------------------------------------------
# Coefficient rings Z <= Z[1/d] <= Q


@dataclass(frozen=True)
class CoeffRing:
    """One of ``Z``, ``Z[1/d]`` or ``Q``."""

    kind: str
    d: int | None = None

    def __post_init__(self):
        if self.kind not in ("integers", "localized", "rationals"):
            raise ValueError(f"unknown coefficient ring kind {self.kind!r}")
        if self.kind == "localized" and (self.d is None or self.d < 2):
            raise ValueError("Z[1/d] needs d >= 2")

    @classmethod
    def parse(cls, text: str) -> "CoeffRing":
        s = text.strip().replace(" ", "")
        if s in ("Z", "ZZ", "integers"):
            return INTEGERS
        if s in ("Q", "QQ", "rationals"):
            return RATIONALS
        m = re.fullmatch(r"Z\[1/(\d+)\]", s)
        if m:
            return localized(int(m.group(1)))
        raise ParseError(f"unknown coefficient ring {text!r}")

    def __str__(self):
        if self.kind == "integers":
            return "Z"
        if self.kind == "rationals":
            return "Q"
        return f"Z[1/{self.d}]"


INTEGERS = CoeffRing("integers")
RATIONALS = CoeffRing("rationals")


def localized(d: int) -> CoeffRing:
    return CoeffRing("localized", d)


def in_ring(x: Scalar, ring: CoeffRing) -> bool:
    x = as_rat(x)
    if ring.kind == "rationals":
        return True
    den = x.denominator
    if ring.kind == "integers":
        return den == 1
    g = gcd(den, ring.d)
    while g > 1:
        while den % g == 0:
            den //= g
        g = gcd(den, ring.d)
    return den == 1


def lp_in_ring(p: LaurentPoly, ring: CoeffRing) -> bool:
    return all(in_ring(c, ring) for _, c in p.terms())


# ---------------------------------------------------------------------------
# Text form


def _fmt_coeff(c: Fraction) -> str:
    return str(c) if c.denominator == 1 else f"({c})"


def format_poly(p: LaurentPoly) -> str:
    """Human form in ascending exponent order, e.g. ``2 - 5t + 2t^2``."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for i, (e, c) in enumerate(p.terms()):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else _fmt_coeff(a) + mono
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(t)|(\^)|([-+*()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str]] = []
        pos = 0
        s = text.replace("**", "^").replace("−", "-")
        while pos < len(s):
            if s[pos:].strip() == "":
                break
            m = _TOKEN.match(s, pos)
            if not m:
                raise ParseError(f"unexpected character {s[pos:].strip()[0]!r} in {text!r}")
            num, var, caret, sym = m.groups()
            if num:
                self.toks.append(("num", num))
            elif var:
                self.toks.append(("t", var))
            elif caret:
                self.toks.append(("^", caret))
            else:
                self.toks.append((sym, sym))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of input in {self.text!r}")
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> LaurentPoly:
        if not self.toks:
            raise ParseError("empty polynomial string")
        p = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.toks[self.i][1]!r} in {self.text!r}")
        return p

    def expr(self) -> LaurentPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> LaurentPoly:
        acc = self.power()
        while True:
            k = self.peek()
            if k == "*":
                self.take()
                acc = acc * self.power()
            elif k in ("num", "t", "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> LaurentPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            paren = False
            if self.peek() == "(":
                self.take()
                paren = True
            if self.peek() in ("+", "-"):
                neg = self.take()[0] == "-"
            n = self.take("num")[1]
            if "/" in n:
                raise ParseError(f"fractional exponent in {self.text!r}")
            if paren:
                self.take(")")
            return base ** (-int(n) if neg else int(n))
        return base

    def atom(self) -> LaurentPoly:
        k = self.peek()
        if k == "num":
            return LaurentPoly.const(Fraction(self.take()[1]))
        if k == "t":
            self.take()
            return T
        if k == "(":
            self.take()
            p = self.expr()
            self.take(")")
            return p
        if k is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {self.toks[self.i][1]!r} in {self.text!r}")


def parse_poly(text: str) -> LaurentPoly:
    """Parse ``"2 - 5t + 2t^2"``, ``"(2-3t)(3-2t)"``, ``"t^-1 + t"`` and similar."""
    try:
        return _Parser(text).parse()
    except DomainError as exc:
        raise ParseError(str(exc)) from None
