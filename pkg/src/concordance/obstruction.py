"""Concordance-distinctness checks for infected knots.

Everything here is a statement about algebra: whether the Blanchfield and
Alexander-polynomial hypotheses of the distinctness criterion hold. The
remaining hypothesis, a lower bound on the integrated signature of the
seed knot against Cheeger-Gromov constants, is never evaluated and is carried
as a caveat string on every report.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import divisors, factorint

from .blanchfield import BlValue, bl_pair, eq_selflink, self_link
from .laurent import (
    ONE,
    RATIONALS,
    T,
    DomainError,
    LaurentPoly,
    as_rat,
    evaluate,
    exact_div,
    in_ring,
    involve,
    localized,
    lp_gcd,
    to_poly,
)
from .ratfun import ONE_MINUS_T, RatFun, chi, eq_mod, psi_nonzero
from .seifert import (
    CurveClass,
    SeifertMatrix,
    alexander_poly,
    check_curve,
    decompose,
    element_order,
)

RHO_CAVEAT = (
    "Conditional: distinctness also needs |rho_0(J_0)| to exceed the Cheeger-Gromov bound "
    "C_R + 2 C_V for the seed knot J_0. That hypothesis is not evaluated here; "
    "this report only says whether the algebraic obstruction fires."
)


class HypothesisViolation(ValueError):
    """An operation's mathematical precondition does not hold."""


class SearchExhausted(RuntimeError):
    """A bounded search finished without finding what it looked for."""


# ---------------------------------------------------------------------------
# Rational roots


@dataclass(frozen=True)
class RootSpec:
    roots: tuple[Fraction, ...]
    residual: LaurentPoly

    def distinct(self) -> list[Fraction]:
        return sorted(set(self.roots), reverse=True)

    def residual_is_unit(self) -> bool:
        return self.residual.is_constant()


def rational_roots(p: LaurentPoly) -> RootSpec:
    """All rational roots with multiplicity, by the rational root theorem.

    ``p = t^k * prod(t - r) * residual`` exactly; roots are listed in
    decreasing order.
    """
    if p.is_zero():
        raise DomainError("the zero polynomial has no root list")
    q = to_poly(p)
    roots: list[Fraction] = []
    while q.high > 0:
        ints = q.scale(q.denominators_lcm())
        a0 = abs(int(ints.coeff(0)))
        an = abs(int(ints.lead()))
        found = None
        for r in divisors(a0):
            for s in divisors(an):
                for cand in (Fraction(r, s), Fraction(-r, s)):
                    if evaluate(q, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        q = exact_div(q, T - LaurentPoly.const(found))
    return RootSpec(tuple(sorted(roots, reverse=True)), q)


# ---------------------------------------------------------------------------
# Multiplicative relations between roots


def _exponent_vector(x: Fraction) -> dict[int, int]:
    out: dict[int, int] = {}
    for pr, e in factorint(abs(x.numerator)).items():
        out[pr] = out.get(pr, 0) + e
    for pr, e in factorint(x.denominator).items():
        out[pr] = out.get(pr, 0) - e
    return {pr: e for pr, e in out.items() if e}


def power_relation(alpha: Fraction, beta: Fraction) -> tuple[int, int] | None:
    """Smallest ``(m, n)`` with ``m >= 1``, ``n != 0`` and ``alpha^m == beta^n``.

    Decided from prime-exponent vectors: the vectors of ``alpha`` and
    ``beta`` must be proportional, and the signs must then agree.
    """
    alpha, beta = as_rat(alpha), as_rat(beta)
    if alpha == 0 or beta == 0:
        return (1, 1) if alpha == beta else None
    va, vb = _exponent_vector(alpha), _exponent_vector(beta)
    if set(va) != set(vb):
        return None
    if not va:
        # both are +-1
        for m, n in ((1, 1), (1, -1), (2, 1), (1, 2), (2, 2)):
            if alpha ** m == beta ** n:
                return m, n
        return None
    ratios = {Fraction(va[pr], vb[pr]) for pr in va}
    if len(ratios) != 1:
        return None
    r = ratios.pop()  # n / m
    m, n = r.denominator, r.numerator
    if alpha ** m != beta ** n:
        m, n = 2 * m, 2 * n
    assert alpha ** m == beta ** n
    return m, n


@dataclass(frozen=True)
class Witness:
    """Evidence that two polynomials are not strongly coprime.

    ``alpha ** m == beta ** n`` for roots ``alpha`` of the first and ``beta``
    of the second polynomial; when the roots are not rational, the witness is
    instead a common factor of ``p(t^n)`` and ``q(t^m)``.
    """

    m: int
    n: int
    alpha: Fraction | None = None
    beta: Fraction | None = None
    common_factor: LaurentPoly | None = None

    def verify(self, p: LaurentPoly, q: LaurentPoly) -> bool:
        if self.alpha is not None:
            return (
                evaluate(p, self.alpha) == 0
                and evaluate(q, self.beta) == 0
                and self.alpha ** self.m == self.beta ** self.n
            )
        return lp_gcd(_subs(p, self.n), _subs(q, self.m)).high > 0

    def to_json(self) -> dict:
        out: dict = {"m": self.m, "n": self.n}
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
            out["beta"] = str(self.beta)
        if self.common_factor is not None:
            out["common_factor"] = self.common_factor.to_json()
        return out


def _subs(p: LaurentPoly, k: int) -> LaurentPoly:
    return p.substitute_power(k)


def _rational_witnesses(p: LaurentPoly, q: LaurentPoly) -> tuple[list[Witness], RootSpec, RootSpec]:
    rp, rq = rational_roots(p), rational_roots(q)
    out = []
    for a in rp.distinct():
        for b in rq.distinct():
            rel = power_relation(a, b)
            if rel is not None:
                out.append(Witness(rel[0], rel[1], a, b))
    return out, rp, rq


def _search_witnesses(p: LaurentPoly, q: LaurentPoly, bound: int, want_unequal: bool):
    """Exact gcd search over ``p(t^a)``, ``q(t^b)`` with ``1 <= a``, ``0 < |b| <= bound``."""
    for a in range(1, bound + 1):
        pa = _subs(p, a)
        for b in [x for k in range(1, bound + 1) for x in (k, -k)]:
            if want_unequal and abs(a) == abs(b):
                continue
            g = lp_gcd(pa, _subs(q, b))
            if g.high > 0:
                # common root tau: alpha = tau^a, beta = tau^b, so alpha^b = beta^a
                m, n = (b, a) if b > 0 else (-b, -a)
                return Witness(m, n, common_factor=g)
    return None


@dataclass(frozen=True)
class CoprimalityResult:
    status: str  # strongly_coprime | not_strongly_coprime | undetermined
    witness: Witness | None = None
    bound: int = 0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness.to_json() if self.witness else None,
            "bound": self.bound,
        }


def _check_nonzero(p, q):
    if p.is_zero() or q.is_zero():
        raise DomainError("coprimality is undefined for the zero polynomial")


def strongly_coprime(p: LaurentPoly, q: LaurentPoly, bound: int = 12) -> CoprimalityResult:
    """Are ``p(t^n)`` and ``q(t^m)`` coprime for all nonzero ``n, m``?

    Exact when all roots are rational; otherwise an exact gcd search up to
    ``bound`` that reports ``undetermined`` if it finds nothing.
    """
    _check_nonzero(p, q)
    wits, rp, rq = _rational_witnesses(p, q)
    if wits:
        return CoprimalityResult("not_strongly_coprime", wits[0], bound)
    if rp.residual_is_unit() and rq.residual_is_unit():
        return CoprimalityResult("strongly_coprime", None, bound)
    w = _search_witnesses(p, q, bound, want_unequal=False)
    if w is not None:
        return CoprimalityResult("not_strongly_coprime", w, bound)
    return CoprimalityResult("undetermined", None, bound)


@dataclass(frozen=True)
class RootCondition:
    """Outcome of "common roots of p(t^m), q(t^n) only when n = +-m"."""

    holds: bool | None
    witness: Witness | None = None
    bound: int = 0

    def to_json(self) -> dict:
        status = {True: "holds", False: "fails", None: "undetermined"}[self.holds]
        return {"status": status, "witness": self.witness.to_json() if self.witness else None, "bound": self.bound}


def root_condition(p: LaurentPoly, q: LaurentPoly, bound: int = 12) -> RootCondition:
    _check_nonzero(p, q)
    wits, rp, rq = _rational_witnesses(p, q)
    bad = [w for w in wits if abs(w.m) != abs(w.n)]
    if bad:
        return RootCondition(False, bad[0], bound)
    if rp.residual_is_unit() and rq.residual_is_unit():
        return RootCondition(True, None, bound)
    w = _search_witnesses(p, q, bound, want_unequal=True)
    if w is not None:
        return RootCondition(False, w, bound)
    return RootCondition(None, None, bound)


def shares_root_only_pm(p: LaurentPoly, q: LaurentPoly, bound: int = 12) -> bool | None:
    """``True``/``False``, or ``None`` when the bounded search is inconclusive."""
    return root_condition(p, q, bound).holds


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class OrderObstruction:
    """The localized criterion for curves of different orders."""

    prime: LaurentPoly
    order1: LaurentPoly
    order2: LaurentPoly
    divides_order1: bool
    coprime_to_order2: bool
    psi_nonzero: bool

    @property
    def fires(self) -> bool:
        return self.divides_order1 and self.coprime_to_order2 and self.psi_nonzero

    def to_json(self) -> dict:
        return {
            "prime": self.prime.to_json(),
            "order1": self.order1.to_json(),
            "order2": self.order2.to_json(),
            "divides_order1": self.divides_order1,
            "coprime_to_order2": self.coprime_to_order2,
            "psi_nonzero": self.psi_nonzero,
            "fires": self.fires,
        }


def order_obstruction(V: SeifertMatrix, eta1: Sequence, eta2: Sequence, p: LaurentPoly) -> OrderObstruction:
    """``p | ord(eta1)``, ``p`` and ``involve(p)`` coprime to ``ord(eta2)``, and the
    self-linking of ``eta1`` survives localization away from ``p``."""
    o1 = element_order(V, eta1)
    o2 = element_order(V, eta2)
    divides = exact_div(to_poly(o1), to_poly(p)) is not None
    coprime = lp_gcd(o2, p).high == 0 and lp_gcd(o2, involve(p)).high == 0
    psi = psi_nonzero(self_link(V, eta1).value, p)
    return OrderObstruction(p, o1, o2, divides, coprime, psi)


VERDICTS = ("distinct_by_condition_1", "distinct_by_condition_2", "obstruction_silent", "undetermined")


@dataclass(frozen=True)
class VerdictReport:
    verdict: str
    checks: dict
    caveat: str = RHO_CAVEAT

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "checks": self.checks, "caveat": self.caveat}


def verdict(
    V_R: SeifertMatrix,
    eta1: Sequence,
    eta2: Sequence,
    R: SeifertMatrix,
    L_alex: LaurentPoly,
    bound: int = 12,
    prime: LaurentPoly | None = None,
) -> VerdictReport:
    """Check the hypotheses under which infecting ``V_R`` along ``eta1`` (by ``J``) and
    along ``eta2`` (by ``L``) give distinct concordance classes.

    ``R`` is the ribbon knot used to build ``J`` and ``L_alex`` the Alexander
    polynomial of ``L``.
    """
    eta1 = check_curve(V_R, eta1)
    eta2 = check_curve(V_R, eta2)
    delta_R = alexander_poly(R)
    bl1 = self_link(V_R, eta1)
    bl2 = self_link(V_R, eta2)
    nonzero = not bl1.is_zero()
    cop = strongly_coprime(delta_R, L_alex, bound)
    roots = root_condition(delta_R, L_alex, bound)
    bl_differ = not eq_selflink(V_R, eta1, eta2, RATIONALS)

    checks = {
        "selflink_eta1_nonzero": nonzero,
        "selflink_eta1": bl1.to_json(),
        "selflink_eta2": bl2.to_json(),
        "alexander_R": delta_R.to_json(),
        "alexander_L": L_alex.to_json(),
        "condition_1_strongly_coprime": cop.to_json(),
        "condition_2_roots_only_pm": roots.to_json(),
        "condition_2_selflinks_differ": bl_differ,
    }
    if prime is not None:
        checks["order_obstruction"] = order_obstruction(V_R, eta1, eta2, prime).to_json()

    if nonzero and cop.status == "strongly_coprime":
        v = "distinct_by_condition_1"
    elif nonzero and roots.holds is True and bl_differ:
        v = "distinct_by_condition_2"
    elif nonzero and (cop.status == "undetermined" or (bl_differ and roots.holds is None)):
        v = "undetermined"
    else:
        v = "obstruction_silent"
    return VerdictReport(v, checks)


# ---------------------------------------------------------------------------
# Cables


@dataclass(frozen=True)
class CableEntry:
    i: int
    curve: CurveClass
    selflink: BlValue


def cable_family(V: SeifertMatrix, eta: Sequence, i_max: int) -> list[CableEntry]:
    """Classes ``i * eta`` (realized by ``(i, 1)``-cables) with pairwise distinct self-linking."""
    eta = check_curve(V, eta)
    base = self_link(V, eta)
    if base.is_zero():
        raise HypothesisViolation("eta has zero self-linking; its cables are not distinguished")
    out = []
    for i in range(1, i_max + 1):
        c = eta.times(i)
        v = self_link(V, c)
        if not eq_mod(v.value, base.value * (i * i)):
            raise AssertionError(f"self-linking of {i}*eta is not {i * i} times that of eta")
        out.append(CableEntry(i, c, v))
    for a in range(len(out)):
        for b in range(a + 1, len(out)):
            if out[a].selflink == out[b].selflink:
                raise AssertionError(f"cables {out[a].i} and {out[b].i} have equal self-linking")
    return out


# ---------------------------------------------------------------------------
# Trace quadric


@dataclass(frozen=True)
class QuadricForm:
    """``chi_hat(x) = sum a_ij x_i x_j`` on rational coordinates in ``basis``."""

    gram: tuple[tuple[Fraction, ...], ...]
    lambda0: RatFun
    basis: tuple[CurveClass, ...]
    constant: Fraction | None = None

    def value(self, coords: Sequence) -> Fraction:
        x = [as_rat(c) for c in coords]
        n = len(self.gram)
        if len(x) != n:
            raise ValueError(f"expected {n} coordinates, got {len(x)}")
        return sum((self.gram[i][j] * x[i] * x[j] for i in range(n) for j in range(n)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.gram for a in row)

    def to_json(self) -> dict:
        return {
            "gram": [[str(a) for a in row] for row in self.gram],
            "lambda0": self.lambda0.to_json(),
            "basis": [b.to_json() for b in self.basis],
            "constant": None if self.constant is None else str(self.constant),
        }


Z = RatFun(ONE, ONE_MINUS_T)


def lambda_candidates(window: int) -> list[RatFun]:
    """``t^k`` for ``k = 0, 1, -1, 2, -2, ...`` then ``z t^k`` in the same order."""
    ks = [0] + [x for k in range(1, window + 1) for x in (k, -k)]
    mons = [RatFun(LaurentPoly.monomial(k)) for k in ks]
    return mons + [Z * m for m in mons]


def chi_hat(V: SeifertMatrix, lambda0: RatFun, x: Sequence) -> Fraction:
    """``chi(lambda0 * bl(x, x))`` computed directly from the pairing."""
    return chi(lambda0 * self_link(V, x).value)


def quadric(V: SeifertMatrix, anchor: Sequence | None = None, window: int | None = None) -> QuadricForm:
    delta = alexander_poly(V)
    if delta == ONE:
        raise HypothesisViolation("Alexander polynomial is 1; the rational module is zero")
    dec = decompose(V)
    basis = dec.rational_basis()
    n = len(basis)
    if window is None:
        window = 2 * delta.high
    pair = [[bl_pair(V, basis[j], basis[i]).value for j in range(n)] for i in range(n)]
    for lam in lambda_candidates(window):
        g = [[chi(lam * pair[i][j]) for j in range(n)] for i in range(n)]
        sym = tuple(tuple((g[i][j] + g[j][i]) / 2 for j in range(n)) for i in range(n))
        if any(a for row in sym for a in row):
            form = QuadricForm(sym, lam, tuple(basis))
            if anchor is not None:
                anchor = check_curve(V, anchor)
                c = form.value(dec.rational_coordinates(anchor))
                form = QuadricForm(sym, lam, tuple(basis), c)
            return form
    raise SearchExhausted(f"no lambda0 among t^k, z t^k with |k| <= {window} gives a nonzero form")


def rational_coordinates(V: SeifertMatrix, x: Sequence) -> list[Fraction]:
    return decompose(V).rational_coordinates(check_curve(V, x))


# ---------------------------------------------------------------------------
# Level curves xy = c for 9_46


@dataclass(frozen=True)
class LevelPoint:
    c: Fraction
    x: Fraction
    y: Fraction
    curve: CurveClass
    selflink: RatFun


def _realize_half_power(x: Fraction, act: Fraction) -> LaurentPoly:
    """Laurent polynomial ``p`` with ``p(act) == x`` for ``x`` in Z[1/2], ``act`` in {2, 1/2}."""
    if x == 0:
        return LaurentPoly()
    if x.denominator == 1:
        return LaurentPoly.const(x)
    # x = u / 2^k with u odd; t^k evaluates to act^k
    k = x.denominator.bit_length() - 1
    u = x.numerator
    e = k if act == Fraction(1, 2) else -k
    return LaurentPoly.monomial(e, u)


def _level_xs(c: Fraction, bound: int) -> list[Fraction]:
    if c == 0:
        return []
    num = abs(c.numerator)
    v = 0
    while num % 2 == 0:
        num //= 2
        v += 1
    v -= c.denominator.bit_length() - 1
    xs = set()
    for d in divisors(num):
        for e in range(-bound, v + bound + 1):
            mag = Fraction(d) * Fraction(2) ** e
            xs.add(mag)
            xs.add(-mag)
    return sorted(xs)


def level_curves(
    c_list: Sequence,
    denom_bound: int,
    V: SeifertMatrix | None = None,
    a: Sequence | None = None,
    b: Sequence | None = None,
) -> list[LevelPoint]:
    """Points of ``xy = c`` over Z[1/2] with denominators at most ``2^denom_bound``.

    Defaults to 9_46 with ``(2t - 1)a = 0`` and ``(t - 2)b = 0``: ``t`` acts on
    ``a`` by 1/2 and on ``b`` by 2, and ``x(t)a + y(t)b`` has self-linking
    ``x(1/2) y(2) bl(a + b, a + b)``. Every emitted point's curve is checked
    against that value with the pairing itself.
    """
    if V is None:
        V = SeifertMatrix.of([[0, -1], [-2, 0]])
        a, b = CurveClass([1, 0]), CurveClass([0, 1])
    a, b = check_curve(V, a), check_curve(V, b)
    two = localized(2)
    base = self_link(V, a + b).value
    rows: list[LevelPoint] = []
    lim = Fraction(1, 2 ** denom_bound)
    for c in c_list:
        c = as_rat(c)
        if not in_ring(c, two):
            raise DomainError(f"level {c} is not in Z[1/2]")
        if c == 0:
            pts = [(Fraction(0), s * Fraction(2) ** e) for e in range(-denom_bound, denom_bound + 1) for s in (1, -1)]
            pts += [(y, x) for x, y in pts]
        else:
            pts = [(x, c / x) for x in _level_xs(c, denom_bound)]
        for x, y in sorted(set(pts)):
            if (x and abs(Fraction(1, x.denominator)) < lim) or (y and Fraction(1, y.denominator) < lim):
                continue
            curve = a.times(_realize_half_power(x, Fraction(1, 2))) + b.times(_realize_half_power(y, Fraction(2)))
            sl = self_link(V, curve).value
            if not eq_mod(sl, base * c):
                raise AssertionError(f"curve for ({x}, {y}) does not have self-linking {c} bl(eta, eta)")
            rows.append(LevelPoint(c, x, y, curve, sl))
    return rows


CSV_COLUMNS = ("c", "x", "y", "realizing_curve_json", "selflink_num", "selflink_den")


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


def level_curves_csv(rows: Sequence[LevelPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([
            str(r.c), str(r.x), str(r.y),
            _dumps(r.curve.to_json()),
            _dumps(r.selflink.num.to_json()),
            _dumps(r.selflink.den.to_json()),
        ])
    return buf.getvalue()


def level_curves_json(rows: Sequence[LevelPoint]) -> str:
    data = [
        {
            "c": str(r.c),
            "x": str(r.x),
            "y": str(r.y),
            "realizing_curve": r.curve.to_json(),
            "selflink": r.selflink.to_json(),
        }
        for r in rows
    ]
    return json.dumps(data, indent=1, sort_keys=True) + "\n"
