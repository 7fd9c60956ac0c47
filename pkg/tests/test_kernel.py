import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pickdisc import (
    DiscKernel,
    RotationInvariantKernel,
    gram_matrix,
    kernel_difference_norm_sq,
    kernel_eval,
    make_f_r,
    make_f_rs,
    metric,
    metric_sq,
    pick_matrix,
    polynomial_embedding,
    psd_report,
    szego_kernel,
    weighted_hardy_coeffs,
)
from pickdisc.errors import DuplicatePoints, ParameterOutOfRange, Singularity

disc_point = st.builds(lambda rho, th: rho * cmath.exp(1j * th), st.floats(0, 0.95), st.floats(0, 2 * math.pi))


def kernels():
    return [
        szego_kernel(),
        RotationInvariantKernel(weighted_hardy_coeffs(-1, 16)),
        DiscKernel(make_f_r(0.5)),
        DiscKernel(make_f_rs(0.3, -0.3)),
    ]


class TestEvaluation:
    def test_szego_value(self):
        assert kernel_eval(szego_kernel(), 0.5, 0.5) == pytest.approx(4 / 3, abs=1e-14)

    def test_szego_closed_form(self):
        k = szego_kernel()
        for z, w in [(0.3 + 0.4j, -0.2j), (0.9, 0.9), (0.7j, 0.1 - 0.6j)]:
            assert k(z, w) == pytest.approx(1 / (1 - z * w.conjugate()), rel=1e-13)

    def test_dirichlet_closed_form(self):
        k = RotationInvariantKernel(weighted_hardy_coeffs(-1, 16))
        x = 0.6 * 0.5
        assert k(0.6, 0.5) == pytest.approx(-math.log(1 - x) / x, rel=1e-13)

    def test_disc_kernel_value(self):
        assert DiscKernel(make_f_r(0.5))(0, 0) == pytest.approx(32 / 31, abs=1e-15)

    def test_identity_disc_is_szego(self):
        kf, ks = DiscKernel(polynomial_embedding([0, 1])), szego_kernel()
        for z, w in [(0.3 + 0.4j, -0.2j), (0.95, 0.9)]:
            assert kf(z, w) == pytest.approx(ks(z, w), rel=1e-13)

    def test_zero_at_origin(self):
        k = DiscKernel(polynomial_embedding([0, math.sqrt(0.5)], [0, 0, math.sqrt(0.5)]))
        assert k(0.7 - 0.2j, 0) == 1

    def test_tail_bound_reported(self):
        value, tail = szego_kernel().evaluate(0.9, 0.9)
        assert 0 < tail < 1e-14
        assert value == pytest.approx(1 / 0.19, rel=1e-13)

    def test_custom_short_window(self):
        from pickdisc import CoefficientSequence

        k = RotationInvariantKernel(CoefficientSequence((1.0, 0.5, 0.25)), growth_bound=1.0)
        value, tail = k.evaluate(0.5, 0.5)
        assert value == pytest.approx(1 + 0.5 * 0.25 + 0.25 * 0.0625)
        assert tail == pytest.approx(0.25 ** 3 / 0.75)

    def test_outside_disc(self):
        with pytest.raises(ParameterOutOfRange):
            szego_kernel()(1.0, 0)
        with pytest.raises(ParameterOutOfRange):
            DiscKernel(make_f_r(0.5))(0, 1.2)

    def test_singularity(self):
        # a "disc" touching the sphere at an interior point
        k = DiscKernel(polynomial_embedding([1]))
        with pytest.raises(Singularity):
            k(0.1, 0.2)

    @settings(max_examples=200)
    @given(disc_point, disc_point)
    def test_hermitian(self, z, w):
        for k in kernels():
            assert k(z, w) == pytest.approx(complex(k(w, z)).conjugate(), rel=1e-12, abs=1e-12)

    @settings(max_examples=100)
    @given(disc_point, disc_point, st.floats(0, 2 * math.pi))
    def test_rotation_invariance(self, z, w, th):
        xi = cmath.exp(1j * th)
        for k in kernels()[:2]:
            assert k(xi * z, xi * w) == pytest.approx(k(z, w), rel=1e-12)


class TestGram:
    @settings(max_examples=50, deadline=None)
    @given(st.lists(disc_point, min_size=6, max_size=6, unique_by=lambda z: (round(z.real, 6), round(z.imag, 6))))
    def test_psd(self, pts):
        for k in kernels():
            g = gram_matrix(k, pts)
            rep = psd_report(g)
            assert rep.psd, rep.min_eigenvalue

    def test_not_hermitian_rejected(self):
        with pytest.raises(ValueError):
            psd_report(np.array([[1, 2], [0, 1]], dtype=complex))


class TestPick:
    def test_feasible(self):
        rep = pick_matrix(szego_kernel(), [0, 0.5], [0, 0.5])
        np.testing.assert_allclose(rep.matrix, [[1, 1], [1, 1]], atol=1e-14)
        assert rep.psd
        assert rep.min_eigenvalue >= -1e-12

    def test_infeasible(self):
        rep = pick_matrix(szego_kernel(), [0, 0.5], [0, 0.6])
        assert not rep.psd
        # 2x2 determinant by hand: 1 * (0.64 * 4/3) - 1
        det = 0.64 * 4 / 3 - 1
        assert np.linalg.det(rep.matrix).real == pytest.approx(det, rel=1e-12)

    def test_single_point_large_target(self):
        for k in kernels():
            assert not pick_matrix(k, [0], [1.5]).psd

    def test_duplicates(self):
        with pytest.raises(DuplicatePoints):
            pick_matrix(szego_kernel(), [0.1, 0.1], [0, 0])

    @settings(max_examples=30)
    @given(st.lists(disc_point, min_size=2, max_size=5, unique_by=lambda z: (round(z.real, 3), round(z.imag, 3))),
           disc_point, st.floats(0, 2 * math.pi))
    def test_automorphism_data_feasible(self, pts, a, th):
        """Targets given by a disc automorphism are interpolated by a contractive multiplier on H^2."""
        phi = lambda z: cmath.exp(1j * th) * (a - z) / (1 - a.conjugate() * z)  # noqa: E731
        assert pick_matrix(szego_kernel(), pts, [phi(z) for z in pts]).psd


class TestMetric:
    def test_szego(self):
        k = szego_kernel()
        assert metric(k, 0, 0.5) == pytest.approx(0.5, abs=1e-14)
        assert metric(k, 0.3j, 0.3j) == 0

    def test_pseudo_hyperbolic_oracle(self):
        k = szego_kernel()
        for z, w in [(0.3, -0.4j), (0.9, 0.85), (0.1 + 0.2j, -0.5)]:
            assert metric(k, z, w) == pytest.approx(abs(z - w) / abs(1 - w.conjugate() * z), rel=1e-10)

    def test_f_half_pinned(self):
        k = DiscKernel(make_f_r(0.5))
        d = metric(k, 0.9, -0.9)
        assert 0 < d < 1
        assert d == pytest.approx(metric(k, -0.9, 0.9), abs=1e-14)
        assert d == pytest.approx(0.5495031651539583, abs=1e-12)

        # independent evaluation from the explicit coordinates
        def fv(z):
            b = (z - 0.5) / (1 - 0.5 * z)
            return np.array([z * z, b * b]) / math.sqrt(2)

        def kk(z, w):
            return 1 / (1 - np.vdot(fv(w), fv(z)))

        ref = math.sqrt(1 - abs(kk(0.9, -0.9)) ** 2 / (kk(0.9, 0.9).real * kk(-0.9, -0.9).real))
        assert d == pytest.approx(ref, rel=1e-9)

    @settings(max_examples=100)
    @given(disc_point, disc_point)
    def test_bounds_and_symmetry(self, z, w):
        for k in kernels():
            d = metric_sq(k, z, w)
            assert 0 <= d <= 1
            assert d == pytest.approx(metric_sq(k, w, z), abs=1e-12)
            if abs(z - w) > 1e-3:
                assert d > 0

    def test_difference_norm(self):
        k = szego_kernel()
        assert kernel_difference_norm_sq(k, 0, 0.5) == pytest.approx(1 / 3, abs=1e-14)
        assert kernel_difference_norm_sq(k, 0.2, 0.2) == 0
