import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from concordance.blanchfield import eq_selflink, self_link
from concordance.laurent import ONE, DomainError, LaurentPoly, evaluate, localized, in_ring, parse_poly
from concordance.obstruction import (
    CSV_COLUMNS,
    HypothesisViolation,
    RHO_CAVEAT,
    SearchExhausted,
    Witness,
    cable_family,
    chi_hat,
    lambda_candidates,
    level_curves,
    level_curves_csv,
    level_curves_json,
    order_obstruction,
    power_relation,
    quadric,
    rational_coordinates,
    rational_roots,
    root_condition,
    shares_root_only_pm,
    strongly_coprime,
    verdict,
)
from concordance.ratfun import RatFun, eq_mod
from concordance.seifert import CurveClass, SeifertMatrix, connected_sum

from conftest import A, B, ETA, V946, random_int_laurent, rf

P = parse_poly
BL_ETA = rf("3(t-1)^2", "2 - 5t + 2t^2")


def R(k):
    return SeifertMatrix.of([[k, 1], [0, -(k + 1)]])


def delta_R(k):
    return LaurentPoly({1: k, 0: -(k + 1)}) * LaurentPoly({1: k + 1, 0: -k})


# roots {2, 1/2} and {4, 1/4}: 2^2 = 4, a power relation with unequal exponents
ROOT2 = P("2 - 5t + 2t^2")
ROOT4 = P("4 - 17t + 4t^2")


class TestRationalRoots:
    def test_946(self):
        rs = rational_roots(ROOT2)
        assert rs.roots == (2, Fraction(1, 2))
        assert rs.residual_is_unit()

    def test_r2(self):
        assert rational_roots(P("6 - 13t + 6t^2")).roots == (Fraction(3, 2), Fraction(2, 3))

    def test_irrational(self):
        rs = rational_roots(P("t^2 + 1"))
        assert rs.roots == () and rs.residual == P("1 + t^2")

    def test_multiplicity_and_residual(self):
        p = P("(t-2)^2 (t^2+t+1) (3t+1) t^-2")
        rs = rational_roots(p)
        assert rs.roots == (2, 2, Fraction(-1, 3))
        prod = rs.residual
        for r in rs.roots:
            prod = prod * (P("t") - LaurentPoly.const(r))
        assert prod == P("(t-2)^2 (t^2+t+1) (3t+1)")

    def test_zero(self):
        with pytest.raises(DomainError):
            rational_roots(P("0"))

    @given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool), min_size=1, max_size=4))
    def test_recovers_roots(self, roots):
        p = ONE
        for r in roots:
            p = p * (P("t") - LaurentPoly.const(r))
        assert rational_roots(p * P("t^2 + 1")).roots == tuple(sorted(roots, reverse=True))


class TestPowerRelation:
    @pytest.mark.parametrize(
        "a, b, rel",
        [
            (2, 4, (2, 1)),
            (2, 2, (1, 1)),
            (2, Fraction(1, 2), (1, -1)),
            (Fraction(9, 4), Fraction(27, 8), (3, 2)),
            (-2, 4, (2, 1)),
            (-8, -2, (1, 3)),
            (2, 3, None),
            (6, Fraction(3, 2), None),
            (Fraction(3, 2), Fraction(2, 3), (1, -1)),
            (-1, 1, (2, 1)),
        ],
    )
    def test_cases(self, a, b, rel):
        a, b = Fraction(a), Fraction(b)
        got = power_relation(a, b)
        assert got == rel
        if got:
            assert a ** got[0] == b ** got[1]

    @given(st.integers(2, 12), st.integers(1, 4), st.integers(1, 4))
    def test_constructed(self, base, m, n):
        a, b = Fraction(base) ** n, Fraction(base) ** m
        rel = power_relation(a, b)
        assert rel is not None and a ** rel[0] == b ** rel[1]


class TestStrongCoprimality:
    def test_shared_root(self):
        res = strongly_coprime(ROOT2, ROOT2, 8)
        assert res.status == "not_strongly_coprime"
        w = res.witness
        assert (w.alpha, w.beta, w.m, w.n) == (2, 2, 1, 1)
        assert w.verify(ROOT2, ROOT2)

    @pytest.mark.parametrize("j, k", [(j, k) for j in range(1, 5) for k in range(j + 1, 5)])
    def test_rk_pairs(self, j, k):
        res = strongly_coprime(delta_R(j), delta_R(k), 8)
        assert res.status == "strongly_coprime" and res.witness is None

    def test_root2_root4(self):
        res = strongly_coprime(ROOT2, ROOT4, 8)
        assert res.status == "not_strongly_coprime"
        w = res.witness
        assert w.verify(ROOT2, ROOT4)
        assert w.alpha ** w.m == w.beta ** w.n
        assert abs(w.m) != abs(w.n)

    def test_cyclotomic_search(self):
        res = strongly_coprime(P("t^2 + 1"), P("t^2 + t + 1"), 12)
        assert res.status == "not_strongly_coprime"
        assert res.witness.common_factor is not None
        assert res.witness.verify(P("t^2 + 1"), P("t^2 + t + 1"))

    def test_undetermined(self):
        res = strongly_coprime(P("t^2 - 3t + 1"), P("t^2 + 1"), 3)
        assert res.status == "undetermined" and res.witness is None and res.bound == 3

    def test_zero_input(self):
        with pytest.raises(DomainError):
            strongly_coprime(P("0"), ROOT2)

    @given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3), st.sampled_from([1, -1]))
    def test_symmetric_and_unit_invariant(self, j, k, e, s):
        p, q = delta_R(j), delta_R(k)
        a = strongly_coprime(p, q, 6).status
        assert strongly_coprime(q, p, 6).status == a
        assert strongly_coprime(p * LaurentPoly.monomial(e, s), q, 6).status == a


class TestRootCondition:
    def test_self(self):
        assert shares_root_only_pm(delta_R(2), delta_R(2)) is True

    def test_strongly_coprime_is_vacuous(self):
        assert shares_root_only_pm(delta_R(1), delta_R(3)) is True

    def test_root2_root4(self):
        rc = root_condition(ROOT2, ROOT4)
        assert rc.holds is False
        assert abs(rc.witness.m) != abs(rc.witness.n)
        assert rc.witness.verify(ROOT2, ROOT4)

    def test_search_finds_unequal_powers(self):
        assert shares_root_only_pm(P("t^2 - t + 1"), P("t^2 + 1")) is False

    def test_undetermined(self):
        assert shares_root_only_pm(P("t^2 - 3t + 1"), P("t^2 + 1"), 2) is None


class TestVerdict:
    def test_eta_vs_double(self):
        rep = verdict(V946, ETA, ETA.times(2), R(2), P("(2-3t)(3-2t)"))
        assert rep.verdict == "distinct_by_condition_2"
        assert rep.checks["selflink_eta1_nonzero"] is True
        assert rep.checks["condition_1_strongly_coprime"]["status"] == "not_strongly_coprime"
        assert rep.checks["condition_2_roots_only_pm"]["status"] == "holds"
        assert rep.checks["condition_2_selflinks_differ"] is True
        assert rep.caveat == RHO_CAVEAT

    def test_figure_pair_silent(self):
        g1 = CurveClass(["t + t^-1", 1])
        g2 = CurveClass(["t", "t^2 + 1"])
        rep = verdict(V946, g1, g2, R(2), P("(2-3t)(3-2t)"))
        assert rep.verdict == "obstruction_silent"

    def test_isotropic_eta1(self):
        rep = verdict(V946, A, ETA, R(2), delta_R(3))
        assert rep.verdict == "obstruction_silent"
        assert rep.checks["selflink_eta1_nonzero"] is False

    def test_condition_1(self):
        rep = verdict(V946, ETA, ETA, R(2), delta_R(3))
        assert rep.verdict == "distinct_by_condition_1"

    def test_undetermined(self):
        rep = verdict(V946, ETA, ETA, R(2), P("t^2 - 3t + 1"), bound=2)
        assert rep.verdict == "undetermined"

    def test_monotone(self):
        # condition 2 also holds here, but condition 1 takes precedence
        rep = verdict(V946, ETA, ETA.times(2), R(2), delta_R(3))
        assert rep.verdict == "distinct_by_condition_1"
        assert rep.checks["condition_2_selflinks_differ"] is True

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            verdict(V946, [1, 0, 0], ETA, R(2), delta_R(2))

    def test_order_check(self):
        V = connected_sum(R(1), R(2))
        eta1 = CurveClass([0, 0, 0, 1])
        eta2 = CurveClass([1, -1, 0, 0])
        oo = order_obstruction(V, eta1, eta2, P("2 - 3t"))
        assert oo.divides_order1 and oo.coprime_to_order2 and oo.psi_nonzero and oo.fires
        # eta2's order t - 2 meets p = 2t - 1 through its conjugate
        assert not order_obstruction(V, eta1, eta2, P("2t - 1")).fires
        rep = verdict(V, eta1, eta2, R(2), delta_R(2), prime=P("2 - 3t"))
        assert rep.checks["order_obstruction"]["fires"] is True


class TestCables:
    def test_946(self):
        fam = cable_family(V946, ETA, 5)
        assert [e.i for e in fam] == [1, 2, 3, 4, 5]
        assert fam[0].curve == ETA
        for e in fam:
            assert eq_mod(e.selflink.value, BL_ETA * RatFun.const(e.i * e.i))

    def test_isotropic(self):
        with pytest.raises(HypothesisViolation):
            cable_family(V946, A, 3)


class TestQuadric:
    def test_946_nonzero_symmetric(self):
        form = quadric(V946)
        n = len(form.gram)
        assert n == 2
        assert not form.is_zero()
        assert all(form.gram[i][j] == form.gram[j][i] for i in range(n) for j in range(n))
        assert form.lambda0 == RatFun(P("t"))

    def test_candidate_order(self):
        c = lambda_candidates(1)
        assert [str(x) for x in c] == ["1", "t", "t^-1", "1 / (1 - t)", "t / (1 - t)", "t^-1 / (1 - t)"]

    def test_anchor(self):
        form = quadric(V946, anchor=ETA)
        assert form.constant == chi_hat(V946, form.lambda0, ETA)

    def test_unknot(self):
        with pytest.raises(HypothesisViolation):
            quadric(SeifertMatrix.of([]))

    def test_window_exhausted(self):
        # window 0 allows only lambda = 1 and z; chi(bl(x, x)) is always 0 for lambda = 1
        try:
            form = quadric(V946, window=0)
        except SearchExhausted:
            return
        assert form.lambda0 == RatFun(ONE, P("1 - t"))

    def test_consistency(self):
        rng = random.Random(7)
        form = quadric(V946)
        for _ in range(30):
            x = random_int_laurent(rng, coeff=3, lo=-2, hi=2, terms=3)
            y = random_int_laurent(rng, coeff=3, lo=-2, hi=2, terms=3)
            q = random_int_laurent(rng, coeff=3, lo=-2, hi=2, terms=2)
            if evaluate(q, Fraction(1, 2)) == 0:
                continue
            g = CurveClass([x, y])
            d = CurveClass([x * q + P("2t - 1") * q, y.scale(1 / evaluate(q, Fraction(1, 2)))])
            assert eq_selflink(V946, g, d)
            assert form.value(rational_coordinates(V946, g)) == form.value(rational_coordinates(V946, d))
            assert chi_hat(V946, form.lambda0, g) == form.value(rational_coordinates(V946, g))


class TestLevelCurves:
    def test_rows_verified(self):
        rows = level_curves([1, -1, Fraction(15, 4)], 2)
        assert rows
        for r in rows:
            assert r.x * r.y == r.c
            assert eq_mod(self_link(V946, r.curve).value, BL_ETA * RatFun.const(r.c))

    def test_contains_figure_points(self):
        pts = {(r.x, r.y) for r in level_curves([Fraction(15, 4)], 2)}
        assert (Fraction(5, 2), Fraction(3, 2)) in pts
        pts = {(r.x, r.y) for r in level_curves([Fraction(5, 2)], 2)}
        assert (Fraction(5, 2), 1) in pts and (Fraction(1, 2), 5) in pts

    def test_construction_shape(self):
        (row,) = [r for r in level_curves([Fraction(3, 4)], 2) if r.x == Fraction(1, 4)]
        assert row.curve == CurveClass(["t^2", 3])

    def test_axes(self):
        rows = level_curves([0], 1)
        assert rows and all(r.x == 0 or r.y == 0 for r in rows)
        assert all(self_link(V946, r.curve).is_zero() for r in rows)

    def test_outside_ring(self):
        with pytest.raises(DomainError):
            level_curves([Fraction(1, 3)], 2)

    def test_denominator_bound(self):
        for r in level_curves([1, 5], 3):
            assert in_ring(r.x, localized(2)) and r.x.denominator <= 8 and r.y.denominator <= 8

    def test_serialization(self):
        rows = level_curves([1, -2], 1)
        text = level_curves_csv(rows)
        assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
        assert len(text.splitlines()) == len(rows) + 1
        assert level_curves_json(rows) == level_curves_json(level_curves([1, -2], 1))
