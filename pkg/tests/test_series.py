from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickdisc import (
    CoefficientSequence,
    bergman_coeffs,
    coeffs_from_reciprocal,
    complete_pick_check,
    embedding_dimension,
    normalize,
    reciprocal_coeffs,
    renewal_limit,
    szego_coeffs,
    weighted_hardy_coeffs,
)
from pickdisc.errors import MalformedInput, NotCompletePick, NotNormalized, ParameterOutOfRange, PeriodicSupport, ZeroAtOrigin


def reciprocal_by_inversion(c):
    """Oracle: 1 - 1/k from a lower-triangular Toeplitz solve for the power series of 1/k."""
    c = np.asarray([float(x) for x in c], dtype=float)
    n = len(c)
    T = np.zeros((n, n))
    for i in range(n):
        T[i, : i + 1] = c[i::-1]
    e0 = np.zeros(n)
    e0[0] = 1
    inv = np.linalg.solve(T, e0)
    return -inv[1:]


def exact_reciprocal_series(c):
    """Oracle in rational arithmetic: b = 1/k via b_n = -sum_{m>=1} c_m b_{n-m}, then r = -b."""
    b = [Fraction(1)]
    for n in range(1, len(c)):
        b.append(-sum(Fraction(c[m]) * b[n - m] for m in range(1, n + 1)))
    return [-x for x in b[1:]]


probability_vector = st.lists(st.floats(0, 1), min_size=1, max_size=8).filter(lambda v: sum(v) > 1e-3).map(
    lambda v: [x / sum(v) for x in v]
)


class TestCoefficients:
    def test_weighted_hardy_values(self):
        assert all(v == 1.0 for v in weighted_hardy_coeffs(0, 20).values)
        c = weighted_hardy_coeffs(-1, 20, exact=True)
        assert c.values[:4] == (1, Fraction(1, 2), Fraction(1, 3), Fraction(1, 4))
        assert weighted_hardy_coeffs(-2, 20).values[3] == pytest.approx(1 / 16)

    def test_negative_rejected(self):
        with pytest.raises(ParameterOutOfRange):
            CoefficientSequence((1, -1))

    def test_normalize(self):
        c = normalize(CoefficientSequence((2, 1, 1, 1), "exact"))
        assert c.values == (1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
        same = szego_coeffs(10)
        assert normalize(same) is same
        with pytest.raises(ZeroAtOrigin):
            normalize(CoefficientSequence((0, 1)))

    def test_json(self):
        c = weighted_hardy_coeffs(-1, 16, exact=True)
        d = CoefficientSequence.from_json(c.to_json())
        assert d == c
        assert CoefficientSequence.from_json({"mode": "exact", "c": [[1, 1], [1, 3]]}).values[1] == Fraction(1, 3)
        with pytest.raises(MalformedInput):
            CoefficientSequence.from_json({"c": [[1, 0]], "mode": "exact"})
        with pytest.raises(MalformedInput):
            CoefficientSequence.from_json({"mode": "exact"})

    def test_generator_extension(self):
        assert weighted_hardy_coeffs(-1, 16).coefficient(99) == pytest.approx(0.01)
        with pytest.raises(IndexError):
            CoefficientSequence((1, 0.5)).coefficient(5)


class TestReciprocal:
    def test_szego(self):
        rep = reciprocal_coeffs(szego_coeffs(30))
        assert rep.r == (1,) + (0,) * 29

    def test_bergman(self):
        rep = reciprocal_coeffs(bergman_coeffs(30))
        assert rep.r[:3] == (2, -1, 0)
        assert all(x == 0 for x in rep.r[2:])

    def test_modified_hardy(self):
        c = normalize(CoefficientSequence((2,) + (1,) * 40, "exact"))
        rep = reciprocal_coeffs(c)
        assert list(rep.r[:20]) == [Fraction(1, 2 ** n) for n in range(1, 21)]

    def test_requires_normalized(self):
        with pytest.raises(NotNormalized):
            reciprocal_coeffs(CoefficientSequence((2, 1)))

    @pytest.mark.parametrize("s", [0.5, -0.5, -1.0, -2.0, -3.7])
    def test_against_toeplitz_oracle(self, s):
        c = weighted_hardy_coeffs(s, 120)
        np.testing.assert_allclose(reciprocal_coeffs(c).r, reciprocal_by_inversion(c.values), rtol=1e-9, atol=1e-13)

    def test_exact_against_rational_oracle(self):
        c = weighted_hardy_coeffs(-1, 40, exact=True)
        assert list(reciprocal_coeffs(c).r) == exact_reciprocal_series(c.values)

    @settings(max_examples=40)
    @given(probability_vector)
    def test_round_trip_float(self, r):
        c = coeffs_from_reciprocal(r, 60, exact=False)
        back = reciprocal_coeffs(c).r
        np.testing.assert_allclose(back[: len(r)], r, atol=1e-12)
        np.testing.assert_allclose(back[len(r):], 0, atol=1e-12)

    @settings(max_examples=20)
    @given(st.lists(st.fractions(min_value=0, max_value=1, max_denominator=50), min_size=1, max_size=5))
    def test_round_trip_exact(self, r):
        c = coeffs_from_reciprocal(r, 30, exact=True)
        back = reciprocal_coeffs(c).r
        assert list(back[: len(r)]) == list(r)
        assert all(x == 0 for x in back[len(r):])

    @settings(max_examples=40)
    @given(probability_vector, st.floats(0.1, 1.0))
    def test_monotone_bound_and_positivity(self, r, scale):
        r = [x * scale for x in r]
        c = coeffs_from_reciprocal(r, 80, exact=False)
        assert max(c.values) <= 1 + 1e-12
        if r[0] > 0:
            assert min(c.values) > 0


class TestCompletePick:
    def test_szego(self):
        assert complete_pick_check(szego_coeffs(50)).is_complete_pick

    def test_bergman(self):
        v = complete_pick_check(bergman_coeffs(50))
        assert v.kind == "not_complete_pick" and v.first_bad_index == 2

    def test_dirichlet(self):
        assert complete_pick_check(weighted_hardy_coeffs(-1, 200, exact=True)).is_complete_pick
        assert complete_pick_check(weighted_hardy_coeffs(-1, 200)).is_complete_pick

    def test_weighted_hardy_positive_s(self):
        assert not complete_pick_check(weighted_hardy_coeffs(1, 50, exact=True)).is_complete_pick

    def test_sum_exceeding_one(self):
        c = coeffs_from_reciprocal([Fraction(3, 4), Fraction(1, 2)], 20)
        v = complete_pick_check(c)
        assert v.kind == "not_complete_pick" and v.first_bad_index is None

    def test_undecided_band(self):
        c = coeffs_from_reciprocal([0.5, 0.0, -1e-10], 20, exact=False)
        assert complete_pick_check(c).kind == "inconclusive"

    def test_zero_coefficients_reported(self):
        c = coeffs_from_reciprocal([0, Fraction(1, 2)], 10)
        assert complete_pick_check(c).zero_coefficient_indices == (1, 3, 5, 7, 9)


class TestEmbeddingDimension:
    def test_szego(self):
        v = embedding_dimension(szego_coeffs(200))
        assert (v.kind, v.dimension, v.nonzero_indices) == ("finite", 1, (1,))

    def test_polynomial_r(self):
        v = embedding_dimension(coeffs_from_reciprocal([Fraction(1, 2), 0, Fraction(1, 4)], 200))
        assert (v.kind, v.dimension, v.nonzero_indices) == ("finite", 2, (1, 3))
        vf = embedding_dimension(coeffs_from_reciprocal([0.5, 0.0, 0.25], 200, exact=False))
        assert (vf.kind, vf.dimension, vf.nonzero_indices) == ("finite", 2, (1, 3))

    @pytest.mark.parametrize("s", [-0.5, -1.0, -2.0])
    def test_weighted_hardy_infinite(self, s):
        c = weighted_hardy_coeffs(s, 200)
        v = embedding_dimension(c)
        assert v.kind == "infinite_up_to_truncation"
        assert all(x > 0 for x in reciprocal_coeffs(c).r)

    def test_not_complete_pick(self):
        with pytest.raises(NotCompletePick):
            embedding_dimension(bergman_coeffs(30))

    def test_inconclusive_float(self):
        c = coeffs_from_reciprocal([0.5, 0.0, 1e-10], 60, exact=False)
        assert embedding_dimension(c).kind == "inconclusive"


class TestRenewal:
    def test_szego(self):
        rep = renewal_limit(szego_coeffs(100))
        assert rep.mu == 1 and rep.limit == 1 and rep.hardy_equivalent

    def test_two_step(self):
        c = coeffs_from_reciprocal([0.5, 0.5], 200, exact=False)
        assert c.values[:4] == (1, 0.5, 0.75, 0.625)
        rep = renewal_limit(c)
        assert rep.mu == pytest.approx(1.5)
        assert abs(c.values[200] - 2 / 3) < 1e-10
        assert rep.hardy_equivalent

    def test_geometric(self):
        c = coeffs_from_reciprocal([Fraction(1, 2 ** n) for n in range(1, 201)], 200)
        assert all(v == Fraction(1, 2) for v in c.values[1:])
        assert renewal_limit(c).mu == pytest.approx(2, abs=1e-12)

    def test_periodic(self):
        with pytest.raises(PeriodicSupport):
            renewal_limit(coeffs_from_reciprocal([0, 1], 40))

    def test_dirichlet_sum_below_one(self):
        rep = renewal_limit(weighted_hardy_coeffs(-1, 200))
        assert not rep.hardy_equivalent
        assert rep.notes

    @settings(max_examples=25)
    @given(probability_vector)
    def test_convergence(self, r):
        r = [0.3] + [0.7 * x for x in r]
        c = coeffs_from_reciprocal(r, 400, exact=False)
        mu = sum((n + 1) * x for n, x in enumerate(r))
        errs = [abs(c.values[n] - 1 / mu) for n in (100, 200, 400)]
        assert errs[2] <= errs[0] + 1e-13
        assert errs[2] < 1e-4
        assert renewal_limit(c).limit == pytest.approx(1 / mu, rel=1e-12)
