import math

import numpy as np
import pytest

from tensorgeo.coeffs import alpha, cor38_coeff, iota, kappa_coeff, lambda_coeff
from tensorgeo.flats import random_rotation
from tensorgeo.measures import curvature_measure, tcm
from tensorgeo.polytope import Region, cross_polytope, cube, simplex
from tensorgeo.rng import stream
from tensorgeo.symtensor import SymTensor, metric_tensor
from tensorgeo.verify import (
    crofton_lhs,
    crofton_rhs,
    crofton_verify,
    independence_indices,
    independence_rank,
    kinematic_lhs,
    kinematic_rhs,
    kinematic_verify,
    steiner_check,
)


class TestCroftonRhsStructure:
    def test_scalar_case_reduces_to_alpha(self):
        # r = s = l = 0, j < k: single term alpha * C_{n-k+j}
        P = cube(3)
        for k in (1, 2):
            for j in range(k):
                rhs, err = crofton_rhs(P, k, j)
                expected = alpha(3, j, k) * curvature_measure(P, 3 - k + j)
                assert rhs.value() == pytest.approx(expected, rel=1e-12)
                assert err.coeffs == {}

    def test_j_equals_k_odd_s_is_zero(self):
        rhs, _ = crofton_rhs(cube(2), 1, 1, s=3)
        assert rhs.coeffs == {}

    def test_j_equals_k_even_s(self):
        # n=2, k=j=1, s=2: (1/(4 pi^2)) (Gamma(3/2)/Gamma(1/2)) * phi_2^{0,0,1};
        # the top measure is (omega_4/omega_2) Q vol = (pi/2) Q
        rhs, _ = crofton_rhs(cube(2), 1, 1, s=2)
        diag = rhs.coordinate((2, 0))
        assert diag == pytest.approx(1 / (8 * math.pi), rel=1e-12)

    def test_k_equals_n_is_identity(self):
        P = cube(2)
        for (j, r, s, l) in [(0, 0, 2, 0), (1, 1, 1, 0), (1, 0, 0, 1)]:
            rhs, _ = crofton_rhs(P, 2, j, r, s, l)
            direct = tcm(P, j, r, s, l).tensor
            assert rhs.max_abs_coordinate_diff(direct) < 1e-12

    def test_three_term_assembly(self):
        # n=3, k=2, j=1, s=2: terms (m,i) in {(0,0), (1,0), (1,1)}
        from tensorgeo.coeffs import d_coeff
        P = cube(3)
        rhs, _ = crofton_rhs(P, 2, 1, s=2)
        manual = SymTensor.zero(3, 2)
        for (m, i) in [(0, 0), (1, 0), (1, 1)]:
            c = d_coeff(3, 1, 2, 2, 0, i, m)
            term = metric_tensor(3).power(m - i) * tcm(P, 2, 0, 2 - 2 * m, i).tensor
            manual = manual.add_scaled(term, c)
        assert rhs.max_abs_coordinate_diff(manual) < 1e-14


class TestSpecialisedFamilyExpansions:
    """The specialised coefficient families must reproduce the generic
    right-hand side at tensor level on exact paths."""

    def test_iota_expansion(self):
        # j = k-1, l = 1: RHS = sum_m iota Q^m phi_{n-1}^{r,s-2m,1}
        for (n, k, s) in [(3, 2, 0), (3, 2, 2), (3, 2, 4), (3, 2, 3)]:
            P = cube(n)
            rhs, _ = crofton_rhs(P, k, k - 1, 0, s, 1)
            manual = SymTensor.zero(n, s + 2)
            for m in range(s // 2 + 1):
                term = metric_tensor(n).power(m) * tcm(P, n - 1, 0, s - 2 * m, 1).tensor
                manual = manual.add_scaled(term, iota(n, k, s, m))
            assert rhs.max_abs_coordinate_diff(manual) < 1e-10

    def test_lambda_expansion(self):
        # same LHS written purely in l = 0 measures
        for (n, k, s) in [(3, 2, 0), (3, 2, 2), (3, 2, 3), (4, 2, 2), (4, 3, 1)]:
            P = cube(n)
            rhs, _ = crofton_rhs(P, k, k - 1, 0, s, 1)
            manual = SymTensor.zero(n, s + 2)
            for m in range(s // 2 + 2):
                term = metric_tensor(n).power(m) * tcm(P, n - 1, 0, s + 2 - 2 * m, 0).tensor
                manual = manual.add_scaled(term, lambda_coeff(n, k, s, m))
            assert rhs.max_abs_coordinate_diff(manual) < 1e-10

    def test_kappa_expansion(self):
        # j = k-1, l = 0 written purely in l = 0 measures
        for (n, k, s) in [(2, 1, 0), (2, 1, 2), (3, 2, 2), (3, 1, 2), (3, 2, 3),
                          (4, 2, 4)]:
            P = cube(n)
            rhs, _ = crofton_rhs(P, k, k - 1, 0, s, 0)
            manual = SymTensor.zero(n, s)
            for m in range(s // 2 + 1):
                term = metric_tensor(n).power(m) * tcm(P, n - 1, 0, s - 2 * m, 0).tensor
                manual = manual.add_scaled(term, kappa_coeff(n, k, s, m))
            assert rhs.max_abs_coordinate_diff(manual) < 1e-10

    def test_single_term_k1(self):
        # k = 1, j = 0, l = 0: single surviving term
        for (n, s) in [(2, 2), (3, 2), (3, 3), (3, 4)]:
            P = cube(n)
            rhs, _ = crofton_rhs(P, 1, 0, 0, s, 0)
            h = s // 2
            manual = (metric_tensor(n).power(h)
                      * tcm(P, n - 1, 0, s - 2 * h, 0).tensor).scale(cor38_coeff(n, s))
            assert rhs.max_abs_coordinate_diff(manual) < 1e-10


class TestKernelsAgainstGenericPath:
    """The vectorized sampling kernels must match the slow per-sample
    polytope path on identical sample streams."""

    @pytest.mark.parametrize("cfg", [
        dict(k=1, j=0), dict(k=1, j=1, s=2), dict(k=1, j=1, s=0, l=1),
        dict(k=1, j=1, s=4), dict(k=1, j=1, s=2, l=1)])
    def test_line_kernel_2d(self, cfg):
        P = cube(2)
        fast = crofton_lhs(P, samples=400, seed=21, **cfg)
        slow = crofton_lhs(P, samples=400, seed=21, force_generic=True, **cfg)
        assert fast[0].max_abs_coordinate_diff(slow[0]) < 1e-10

    @pytest.mark.parametrize("cfg", [
        dict(k=1, j=1, s=2), dict(k=1, j=0), dict(k=2, j=1, s=2),
        dict(k=2, j=1, s=0), dict(k=2, j=1, s=1), dict(k=2, j=1, s=2, l=1)])
    def test_kernels_3d(self, cfg):
        P = cube(3)
        fast = crofton_lhs(P, samples=250, seed=22, **cfg)
        slow = crofton_lhs(P, samples=250, seed=22, force_generic=True, **cfg)
        assert fast[0].max_abs_coordinate_diff(slow[0]) < 1e-10

    def test_kernels_on_rotated_simplex(self):
        rho = random_rotation(stream(8, 0), 3)
        P = simplex(3).transformed(rho, np.array([0.2, -0.1, 0.4]))
        fast = crofton_lhs(P, k=2, j=1, s=2, samples=250, seed=23)
        slow = crofton_lhs(P, k=2, j=1, s=2, samples=250, seed=23, force_generic=True)
        assert fast[0].max_abs_coordinate_diff(slow[0]) < 1e-10

    def test_motion_kernel(self):
        P = cube(2)
        P2 = cube(2).transformed(random_rotation(stream(9, 0), 2), np.array([0.2, 0.1]))
        for (r, s) in [(0, 0), (0, 1), (0, 2), (1, 1), (2, 0)]:
            fast = kinematic_lhs(P, P2, 0, r=r, s=s, samples=150, seed=24)
            slow = kinematic_lhs(P, P2, 0, r=r, s=s, samples=150, seed=24,
                                 force_generic=True)
            assert fast[0].max_abs_coordinate_diff(slow[0]) < 1e-10, (r, s)


class TestSmallVerifications:
    def test_crofton_2d_scalar(self):
        rep = crofton_verify(cube(2), 1, 0, samples=20000, seed=1)
        assert rep.passed
        assert rep.rhs.value() == pytest.approx(4 / math.pi, rel=1e-12)

    def test_crofton_2d_triangle_generic(self):
        rep = crofton_verify(simplex(2), 1, 1, s=1, samples=4000, seed=2)
        assert rep.passed

    def test_crofton_3d_k1_j1(self):
        rep = crofton_verify(cube(3), 1, 1, samples=20000, seed=3)
        assert rep.passed

    def test_crofton_3d_k2_j1(self):
        rep = crofton_verify(cube(3), 2, 1, samples=20000, seed=4)
        assert rep.passed

    def test_crofton_with_window(self):
        reg = Region.box([-1, -1], [0.5, 2])
        rep = crofton_verify(cube(2), 1, 1, region=reg, samples=4000, seed=5)
        assert rep.passed

    def test_kinematic_scalar_classical(self):
        P = cube(2)
        P2 = cube(2).transformed(random_rotation(stream(10, 0), 2))
        rep = kinematic_verify(P, P2, 0, samples=30000, seed=6)
        assert rep.passed
        # classical principal formula: sum_p alpha-type * V_p(P) C_{2-p}(P2)
        manual = sum(alpha(2, 0, 2 - p) * curvature_measure(P, p)
                     * curvature_measure(P2, 2 - p) for p in range(3))
        assert rep.rhs.value() == pytest.approx(manual, rel=1e-12)

    def test_kinematic_smoke_containment(self):
        # huge second body: P cap g P2 == P for every sampled motion with
        # translations confined near the centering offset -- the LHS becomes
        # phi_j(P) times the motion mass of full overlap; just check run + report
        P = cube(2)
        big = cube(2).scaled(50.0).transformed(t=np.array([-24.5, -24.5]))
        rep = kinematic_verify(P, big, 0, samples=2000, seed=7)
        assert rep.samples == 2000

    def test_report_fields(self):
        rep = crofton_verify(cube(2), 1, 0, samples=2000, seed=8)
        d = rep.to_dict()
        assert d["theorem"] == "crofton"
        assert {"lhs", "rhs", "stderr", "allowed"} <= set(d["coordinates"][0])
        assert d["samples"] == 2000


class TestIndependence:
    def test_enumeration_counts(self):
        assert len(independence_indices(2, 2)) == 10
        assert len(independence_indices(3, 2)) == 15
        # p = 0: one index per j
        assert len(independence_indices(2, 0)) == 3

    def test_rank_small(self):
        rank, count, _ = independence_rank(2, 0, trials=4, seed=1)
        assert (rank, count) == (3, 3)

    def test_rank_22(self):
        rank, count, _ = independence_rank(2, 2, trials=6, seed=2)
        assert (rank, count) == (10, 10)


class TestSteiner:
    def test_eps_zero_is_volume(self):
        rep = steiner_check(cube(2), [0.0], samples=200000, seed=1)
        assert rep.steiner_volume[0] == pytest.approx(1.0)
        assert rep.rel_error[0] < 0.01

    def test_square_eps_one_exact_value(self):
        rep = steiner_check(cube(2), [1.0], samples=200000, seed=2)
        assert rep.steiner_volume[0] == pytest.approx(1 + 4 + math.pi, rel=1e-12)
        assert rep.rel_error[0] < 0.01

    def test_triangle(self):
        rep = steiner_check(simplex(2), [0.5], samples=200000, seed=3)
        expected = 0.5 + 0.5 * (2 + math.sqrt(2)) + math.pi * 0.25
        assert rep.steiner_volume[0] == pytest.approx(expected, rel=1e-12)
        assert rep.rel_error[0] < 0.01
