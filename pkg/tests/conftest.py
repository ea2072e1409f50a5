from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from concordance.laurent import LaurentPoly
from concordance.ratfun import RatFun
from concordance.seifert import CurveClass, SeifertMatrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

V946 = SeifertMatrix.of([[0, -1], [-2, 0]])
A = CurveClass([1, 0])
B = CurveClass([0, 1])
ETA = CurveClass([1, 1])

small_ints = st.integers(-5, 5)
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@st.composite
def laurent(draw, lo=-3, hi=3, coeffs=rationals, max_terms=4):
    exps = draw(st.lists(st.integers(lo, hi), max_size=max_terms, unique=True))
    return LaurentPoly({e: draw(coeffs) for e in exps})


@st.composite
def nonzero_laurent(draw, **kw):
    p = draw(laurent(**kw))
    if p.is_zero():
        p = LaurentPoly.monomial(draw(st.integers(max(kw.get("lo", -2), -2), 2)), draw(st.sampled_from([1, -1, 2, Fraction(1, 3)])))
    return p


@st.composite
def int_laurent(draw, lo=-2, hi=2, max_terms=3):
    return draw(laurent(lo=lo, hi=hi, coeffs=st.integers(-4, 4), max_terms=max_terms))


def symplectic_seifert(sym: list[list[int]]) -> SeifertMatrix:
    """``S + Omega`` with ``S`` symmetric and ``Omega`` block-diagonal ``[[0, 1], [0, 0]]``.

    ``V - V^T`` is then the standard symplectic form, so ``V`` is always valid.
    """
    n = len(sym)
    rows = [[sym[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    for k in range(0, n, 2):
        rows[k][k + 1] += 1
    return SeifertMatrix.of(rows)


@st.composite
def seifert_matrices(draw, max_genus=2, entry=3):
    g = draw(st.integers(1, max_genus))
    n = 2 * g
    sym = [[draw(st.integers(-entry, entry)) for _ in range(n)] for _ in range(n)]
    return symplectic_seifert(sym)


@st.composite
def seifert_with_curves(draw, k=2, max_genus=2):
    V = draw(seifert_matrices(max_genus=max_genus))
    curves = [CurveClass([draw(int_laurent()) for _ in range(V.size)]) for _ in range(k)]
    return (V, *curves)


def random_int_laurent(rng: random.Random, coeff=5, lo=-3, hi=3, terms=4) -> LaurentPoly:
    return LaurentPoly({rng.randint(lo, hi): rng.randint(-coeff, coeff) for _ in range(rng.randint(1, terms))})


def random_symplectic(rng: random.Random, genus: int, entry=3) -> SeifertMatrix:
    n = 2 * genus
    sym = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(n)]
    return symplectic_seifert(sym)


def rf(num: str, den: str) -> RatFun:
    from concordance.laurent import parse_poly

    return RatFun(parse_poly(num), parse_poly(den))


@pytest.fixture
def rng():
    return random.Random(20240611)
