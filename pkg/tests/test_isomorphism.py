import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickdisc import (
    MobiusTransform,
    candidate_automorphisms,
    collision_bound_check,
    invariant_ratio,
    make_f_r,
    make_f_rs,
    matched_path_limits,
    polynomial_embedding,
    richardson_first_order,
    same_crossing_type,
    symmetric_parameter,
    t_ladder,
    weighted_hardy_obstruction,
)
from pickdisc.embedding import coordinate
from pickdisc.errors import NotNormalized
from pickdisc.functions import mobius_fixing_pm1

from test_embedding import two_crossing_embedding

H = math.sqrt(0.5)
INJECTIVE = polynomial_embedding([0, H], [0, 0, H])
R_GRID = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]


def a_closed(r):
    """A_{f_r}(1), A_{f_r}(-1) by hand."""
    return 2 / (1 - r), 2 / (1 + r)


def alpha_closed(r, s):
    (f1, fm), (g1, gm) = a_closed(r), a_closed(s)
    p, q = math.sqrt(f1 * gm), math.sqrt(fm * g1)
    return (p - q) / (p + q)


class TestRatio:
    def test_values(self):
        assert invariant_ratio(make_f_r(0.5)).value == pytest.approx(3, abs=1e-12)
        assert invariant_ratio(make_f_r(0.25)).value == pytest.approx(5 / 3, abs=1e-12)

    @given(st.floats(-0.9, 0.9).filter(lambda r: abs(r) > 0.01))
    def test_symmetric_family(self, r):
        assert invariant_ratio(make_f_rs(r, -r)).value == pytest.approx(1, abs=1e-12)

    def test_strictly_increasing(self):
        vals = [invariant_ratio(make_f_r(r)).value for r in R_GRID]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_requires_pm1(self):
        with pytest.raises(NotNormalized):
            invariant_ratio(INJECTIVE)

    @settings(max_examples=30)
    @given(st.floats(0.05, 0.9), st.floats(-0.9, 0.9))
    def test_necessity_law(self, r, a):
        f = make_f_r(r)
        g = f.compose(mobius_fixing_pm1(a))
        assert invariant_ratio(g).value == pytest.approx(invariant_ratio(f).value * ((1 + a) / (1 - a)) ** 2, rel=1e-8)


class TestCandidates:
    def test_f_half_vs_quarter(self):
        c = candidate_automorphisms(make_f_r(0.5), make_f_r(0.25))
        assert c.alpha == pytest.approx(0.14589803375031546, abs=1e-12)
        assert c.alpha == pytest.approx(alpha_closed(0.5, 0.25), abs=1e-12)
        g = make_f_r(0.25).compose(c.alpha_map)
        assert invariant_ratio(g).value == pytest.approx(3, rel=1e-8)

    def test_self(self):
        c = candidate_automorphisms(make_f_r(0.5), make_f_r(0.5))
        assert c.alpha == pytest.approx(0, abs=1e-15)
        assert c.beta == pytest.approx(0.5, abs=1e-12)

    @settings(max_examples=10)
    @given(st.floats(0.05, 0.9), st.floats(0.05, 0.9))
    def test_symmetric_families(self, r, s):
        c = candidate_automorphisms(make_f_rs(r, -r), make_f_rs(s, -s))
        assert abs(c.alpha) < 1e-12 and abs(c.beta) < 1e-12

    @settings(max_examples=20)
    @given(st.floats(0.05, 0.9), st.floats(0.05, 0.9))
    def test_alpha_equalizes(self, r, s):
        f, g = make_f_r(r), make_f_r(s)
        c = candidate_automorphisms(f, g)
        assert -1 < c.alpha < 1 and -1 < c.beta < 1
        assert invariant_ratio(g.compose(c.alpha_map)).value == pytest.approx(invariant_ratio(f).value, rel=1e-8)
        assert invariant_ratio(g.compose(c.beta_map)).value == pytest.approx(invariant_ratio(f).value, rel=1e-8)

    def test_exact_values_for_twisted_copy(self):
        f = make_f_r(0.5)
        g = f.compose(MobiusTransform.from_blaschke(0.3))
        c = candidate_automorphisms(f, g)
        assert c.alpha == pytest.approx(-0.3, abs=1e-12)
        assert c.beta == pytest.approx(16 / 23, abs=1e-12)


class TestMatchedPath:
    def test_ladder(self):
        t = t_ladder(1e-6)
        # halving from 1e-2, closed off exactly at t_min
        assert t[0] == 1e-2 and t[-1] == 1e-6
        np.testing.assert_allclose(t[1:-1] / t[:-2], 0.5)
        assert 0.5 <= t[-1] / t[-2] < 1

    def test_richardson_exact_on_lines(self):
        t = t_ladder(1e-4)
        assert richardson_first_order(t, 0.3 + 2.0 * t) == pytest.approx(0.3, abs=1e-12)

    def test_self_pair(self):
        f = make_f_r(0.5)
        rep = matched_path_limits(f, f, 1e-5)
        assert rep.predicted_dg_limit == pytest.approx(0, abs=1e-15)
        assert rep.extrapolated_dg < 1e-3

    def test_half_vs_quarter(self):
        rep = matched_path_limits(make_f_r(0.5), make_f_r(0.25), 1e-6)
        assert (rep.a, rep.b) == pytest.approx((2 / 3, 6 / 5))
        assert rep.predicted_dg_limit == pytest.approx(4 / 49, abs=1e-14)
        assert abs(rep.extrapolated_dg - 4 / 49) < 2e-3
        assert rep.extrapolated_df < 1e-3
        assert all(0 <= d <= 1 for d in rep.df_sq)
        assert rep.t_samples == sorted(rep.t_samples, reverse=True)

    def test_wrong_candidate(self):
        f = make_f_r(0.5)
        g = f.compose(MobiusTransform.from_blaschke(0.3))
        c = candidate_automorphisms(f, g)
        # the right candidate undoes the twist
        good = matched_path_limits(f, g.compose(c.alpha_map))
        assert good.extrapolated_dg < 1e-6
        # beta used as a fixing map composes to the fixing map with parameter
        # (0.3 + 16/23)/(1 + 0.3 * 16/23), so a = 507/49 and b = 1/a
        wrong = matched_path_limits(f, g.compose(mobius_fixing_pm1(c.beta)))
        a = Fraction(507, 49)
        expected = float(1 - 4 * a * (1 / a) / (a + 1 / a) ** 2)
        assert wrong.a == pytest.approx(float(a), rel=1e-10)
        assert wrong.predicted_dg_limit == pytest.approx(expected, rel=1e-12)
        assert wrong.extrapolated_dg == pytest.approx(0.96332579392343, abs=1e-9)
        assert abs(wrong.extrapolated_dg - expected) < 1e-6


class TestCollisionBound:
    def test_origin(self):
        rep = collision_bound_check(make_f_r(0.5), 0, t_min=1e-4)
        assert rep.bound_constant == pytest.approx(0.25)
        assert rep.final_gap_sq < 1e-6
        assert rep.passed

    def test_interior_point(self):
        rep = collision_bound_check(make_f_r(0.5), 0.3)
        assert rep.within_bound and rep.gap_vanishes
        assert max(g for t, g in zip(rep.t_samples, rep.gap_sq) if t <= 1e-3) <= 0.25 * 1.25

    def test_gap_decreases(self):
        rep = collision_bound_check(make_f_r(0.5), 0.5 - 0.2j)
        tail = rep.gap_sq[-8:]
        assert all(b <= a for a, b in zip(tail, tail[1:]))

    def test_kernel_difference_tends_to_bound(self):
        rep = collision_bound_check(make_f_r(0.5), 0)
        assert rep.kernel_difference_sq[-1] == pytest.approx(0.25, abs=1e-3)

    def test_coordinate_multiplier(self):
        phi = coordinate(make_f_r(0.5), 0)
        assert phi(1) == pytest.approx(H) and phi(-1) == pytest.approx(H)


class TestCrossingType:
    def test_same_single(self):
        assert same_crossing_type(make_f_r(0.5), make_f_r(0.25)).same

    def test_different_count(self):
        v = same_crossing_type(make_f_r(0.5), INJECTIVE)
        assert not v.same
        assert v.witness.xi == pytest.approx(1, abs=1e-9) and v.witness.zeta == pytest.approx(-1, abs=1e-9)

    def test_transported_family(self):
        t = symmetric_parameter(0.6)
        assert same_crossing_type(make_f_rs(t, -t), make_f_rs(0, 0.6)).same

    def test_no_crossings(self):
        assert same_crossing_type(INJECTIVE, INJECTIVE).same

    def test_two_crossings_moved(self):
        f = two_crossing_embedding()
        g = f.compose(MobiusTransform(np.exp(0.4j), 0.2 - 0.3j))
        v = same_crossing_type(f, g)
        assert v.same
        assert not same_crossing_type(f, make_f_r(0.5)).same


class TestWeightedHardy:
    @pytest.mark.parametrize("s", [-0.5, -1.0, -2.0])
    def test_distinct(self, s):
        assert weighted_hardy_obstruction(make_f_r(0.5), s).distinct


class TestConfigurationMatching:
    @staticmethod
    def pairs(points):
        from pickdisc import CrossingPair

        return [CrossingPair(complex(a), complex(b), 0.0) for a, b in points]

    def test_mobius_image_matches(self):
        from pickdisc.isomorphism import _configurations_equivalent

        cfg = [(1, -1), (1j, -1j)]
        mu = MobiusTransform(np.exp(1.1j), 0.4 + 0.1j)
        moved = [(mu(a), mu(b)) for a, b in cfg]
        found = _configurations_equivalent(self.pairs(cfg), self.pairs(moved), 1e-6)
        assert found is not None

    def test_different_cross_ratio(self):
        from pickdisc.isomorphism import _configurations_equivalent

        cfg = [(1, -1), (1j, -1j)]
        other = [(1, -1), (np.exp(0.3j), np.exp(1j * (math.pi + 1.0)))]
        assert _configurations_equivalent(self.pairs(cfg), self.pairs(other), 1e-6) is None
