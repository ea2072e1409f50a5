"""The field Q(t), its quotient by Laurent polynomial rings, and Trotter's trace.

``z = (1 - t)^-1`` throughout. Every element of Q(t) splits uniquely as an
element of Q[t, t^-1, z] plus a proper fraction whose denominator is coprime
to ``t`` and ``1 - t``; :func:`chi` reads off the derivative at 1 of the
second summand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import (
    ONE,
    RATIONALS,
    T,
    ZERO,
    CoeffRing,
    DomainError,
    LaurentPoly,
    Scalar,
    divmod_poly,
    evaluate,
    exact_div,
    format_poly,
    involve,
    lp_gcd,
    lp_in_ring,
    lp_xgcd,
    primitive,
    to_poly,
)

ONE_MINUS_T = ONE - T


class RatFun:
    """Reduced fraction ``num / den`` in Q(t).

    ``den`` is primitive in Z[t], has nonzero constant term and positive
    constant coefficient, so each element of Q(t) has exactly one
    representation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE):
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = lp_gcd(num, den)
        n = exact_div(num, g)
        d = exact_div(den, g)
        # move units of Q[t, t^-1] from the denominator into the numerator
        canon = primitive(d)
        unit = exact_div(d, canon)
        self.num = exact_div(n, unit)
        self.den = canon

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RatFun":
        return cls(p, ONE)

    @classmethod
    def const(cls, c: Scalar) -> "RatFun":
        return cls(LaurentPoly.const(c), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        """True iff this lies in Q[t, t^-1]."""
        return self.den == ONE

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DomainError("division by zero in Q(t)")
        return RatFun(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFun({format_ratfun(self)!r})"

    def __str__(self):
        return format_ratfun(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RatFun":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, LaurentPoly):
        return RatFun(x)
    if isinstance(x, (int, Fraction)):
        return RatFun.const(x)
    return NotImplemented


def rf_reduce(num: LaurentPoly, den: LaurentPoly) -> RatFun:
    return RatFun(num, den)


def rf_involve(f: RatFun) -> RatFun:
    return RatFun(involve(f.num), involve(f.den))


def rf_evaluate(f: RatFun, q: Scalar) -> Fraction:
    d = evaluate(f.den, q)
    if d == 0:
        raise DomainError(f"denominator vanishes at t = {q}")
    return evaluate(f.num, q) / d


def eq_mod(f: RatFun, g: RatFun, ring: CoeffRing = RATIONALS) -> bool:
    """Decide ``f - g`` in ``ring[t, t^-1]``."""
    h = f - g
    if not h.is_laurent():
        return False
    return lp_in_ring(h.num, ring)


@dataclass(frozen=True)
class QuotElem:
    """Class of ``rep`` in ``Q(t) / ring[t, t^-1]``."""

    rep: RatFun
    ring: CoeffRing = RATIONALS

    def __eq__(self, other):
        if not isinstance(other, QuotElem):
            return NotImplemented
        if self.ring != other.ring:
            raise ValueError(f"cannot compare classes mod {self.ring} and mod {other.ring}")
        return eq_mod(self.rep, other.rep, self.ring)

    def __hash__(self):
        # equality is a decision procedure, not a canonical form
        raise TypeError("QuotElem is not hashable")

    def is_zero(self) -> bool:
        return eq_mod(self.rep, RatFun.const(0), self.ring)


# ---------------------------------------------------------------------------
# Trotter splitting


@dataclass(frozen=True)
class TrotterSplit:
    z_part: RatFun
    proper_part: RatFun


def _split_one_minus_t(d: LaurentPoly) -> tuple[int, LaurentPoly]:
    """Return ``(b, q)`` with ``d = (1 - t)^b q`` and ``q(1) != 0``."""
    b = 0
    while True:
        q = exact_div(d, ONE_MINUS_T)
        if q is None:
            return b, d
        d, b = q, b + 1


def trotter_split(f: RatFun) -> TrotterSplit:
    """Write ``f`` as (element of Q[t, t^-1, z]) + (proper fraction coprime to t(1 - t))."""
    if f.is_zero():
        return TrotterSplit(f, f)
    num, den = f.num, f.den
    a = 0
    if num.low < 0:
        a = -num.low
        num = num.shift(a)
    b, q = _split_one_minus_t(den)
    if q.high == 0:
        return TrotterSplit(f, RatFun.const(0))
    dz = ONE_MINUS_T ** b * T ** a
    _, s, u = lp_xgcd(q, dz)
    # num = num*s*q + num*u*dz, divide by q*dz
    quo, rem = divmod_poly(num * u, q)
    z_part = RatFun(num * s, dz) + RatFun(quo)
    return TrotterSplit(z_part, RatFun(rem, q))


def chi(f: RatFun) -> Fraction:
    """Trotter's trace: zero on Q[t, t^-1, z], derivative at 1 on proper fractions."""
    p = trotter_split(f).proper_part
    if p.is_zero():
        return Fraction(0)
    n, d = p.num, p.den
    d1 = evaluate(d, 1)
    return (evaluate(n.derivative(), 1) * d1 - evaluate(n, 1) * evaluate(d.derivative(), 1)) / d1 ** 2


def in_z_ring(f: RatFun) -> bool:
    """Membership in Q[t, t^-1, z]: denominator is a power of (1 - t) up to units."""
    b, q = _split_one_minus_t(f.den)
    return q.high == 0


def is_proper_coprime(f: RatFun) -> bool:
    """Membership in the complement P: proper and denominator coprime to t(1 - t)."""
    if f.is_zero():
        return True
    n = f.num
    if n.low < 0:
        return False
    return n.high < f.den.high and evaluate(f.den, 1) != 0


# ---------------------------------------------------------------------------
# Localization away from p and its conjugate


def p_primary_part(d: LaurentPoly, p: LaurentPoly) -> LaurentPoly:
    """Largest divisor of ``d`` all of whose irreducible factors divide ``p * involve(p)``."""
    pp = to_poly(p) * to_poly(involve(p))
    part = ONE
    rem = to_poly(d)
    while True:
        g = lp_gcd(rem, pp)
        if g.high == 0:
            return part
        part = part * g
        rem = exact_div(rem, g)


def psi_nonzero(f: RatFun, p: LaurentPoly) -> bool:
    """Is the image of ``f`` nonzero in ``Q(t) / Q[t, t^-1] P^-1``?

    ``P`` is the multiplicative set of polynomials coprime to ``p`` and
    ``involve(p)``; denominators in ``P`` become units after localizing.
    """
    if p.is_zero() or to_poly(p).high == 0:
        raise DomainError("localizing polynomial must be nonconstant")
    if f.is_zero():
        return False
    return p_primary_part(f.den, p).high > 0


# ---------------------------------------------------------------------------
# Display


def _factor_t_minus_1(p: LaurentPoly) -> tuple[int, LaurentPoly]:
    k = 0
    t_minus_1 = T - ONE
    while True:
        q = exact_div(p, t_minus_1)
        if q is None:
            return k, p
        p, k = q, k + 1


def format_numerator(p: LaurentPoly) -> str:
    """Render ``c (t-1)^k r(t)`` with the content and (t-1)-power pulled out."""
    if p.is_zero():
        return "0"
    k, rest = _factor_t_minus_1(p)
    if k == 0:
        return format_poly(p)
    c = rest.content()
    if rest.trailing() < 0 and rest.is_monomial():
        c = -c
    rest = rest.scale(1 / c)
    head = "" if c == 1 else "-" if c == -1 else (str(c) if c.denominator == 1 else f"({c})")
    body = "(t-1)" if k == 1 else f"(t-1)^{k}"
    if rest == ONE:
        return head + body
    return head + body + f"({format_poly(rest)})"


def format_ratfun(f: RatFun) -> str:
    if f.den == ONE:
        return format_poly(f.num)
    return f"{format_numerator(f.num)} / ({format_poly(f.den)})"
