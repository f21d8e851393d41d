import math

import numpy as np
import pytest

from geodiscord.bloch import build_c_matrix, build_generator_basis, decompose
from geodiscord.bounds import (
    build_optimal_isometry,
    closed_form_maximum,
    coefficient_identity,
    compute_bounds,
    epsilon_table,
    gram_matrix,
    interlacing_report,
    luo_fu_bound,
    tight_bound,
    verify_closed_form_maximum,
    verify_interlacing,
)
from geodiscord.errors import ValidationError
from geodiscord.oracle import minimize_qubit_measurement, sample_measurement_upper_bound
from geodiscord.states import DensityMatrix, bell_state, eq52_state, random_unitary, werner_qubit
from geodiscord.verification import isometry_errors
from conftest import random_density

DIMS = [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4)]


def realigned_luo_fu(rho, m, n):
    """tr(CC^t) minus the m largest eigenvalues of CC^t, with no generator basis.

    C is rho's coefficient matrix in an orthonormal product operator basis,
    so CC^t has the squared singular values of the realignment
    R[(a,c),(b,d)] = <ab|rho|cd>.
    """
    r = rho.reshape(m, n, m, n).transpose(0, 2, 1, 3).reshape(m * m, n * n)
    s2 = np.sort(np.linalg.svd(r, compute_uv=False) ** 2)[::-1]
    return float(s2.sum() - s2[:m].sum())


class TestGramMatrix:
    def test_zero(self):
        g = gram_matrix(decompose(np.eye(6) / 6, 2, 3))
        np.testing.assert_allclose(g.G, 0, atol=1e-15)
        np.testing.assert_allclose(g.eta, 0, atol=1e-15)

    def test_bell_identity(self):
        g = gram_matrix(decompose(bell_state()))
        np.testing.assert_allclose(g.G, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(g.eta, [1, 1, 1], atol=1e-12)

    @pytest.mark.parametrize("m,n", DIMS)
    def test_psd_and_construction(self, m, n):
        for seed in range(10):
            b = decompose(random_density(m, n, seed))
            g = gram_matrix(b)
            assert g.eta[-1] >= -1e-9
            np.testing.assert_allclose(g.G, np.outer(b.x, b.x) + 2 / n * b.T @ b.T.T, atol=1e-12)
            assert np.all(np.diff(g.eta) <= 0)


class TestTightBound:
    @pytest.mark.parametrize("m,n", DIMS)
    def test_maximally_mixed(self, m, n):
        assert abs(tight_bound(decompose(np.eye(m * n) / (m * n), m, n))) <= 1e-15

    def test_bell(self):
        # T = diag(1,-1,1): (1/4)(0 + 3 - 1)
        assert abs(tight_bound(decompose(bell_state())) - 0.5) <= 1e-12

    @pytest.mark.parametrize("p", np.linspace(0, 1, 11))
    def test_werner(self, p):
        # T = p diag(1,-1,1), G = p^2 I: (1/4)(3p^2 - p^2)
        assert abs(tight_bound(decompose(werner_qubit(p))) - p * p / 2) <= 1e-12

    def test_report_fields(self):
        rep = compute_bounds(decompose(random_density(3, 3, 2)))
        assert rep.tight_bound_clamped == max(rep.tight_bound, 0.0)
        assert rep.dominance_ok
        assert len(rep.eta) == 8 and len(rep.lam) == 9
        assert abs(rep.tr_cct - rep.lam.sum()) <= 1e-12

    def test_uses_m_minus_one_largest(self):
        b = decompose(random_density(3, 4, 9))
        g = gram_matrix(b)
        expected = 2 / 36 * (b.x @ b.x + 0.5 * np.sum(b.T ** 2) - g.eta[0] - g.eta[1])
        assert abs(tight_bound(b) - expected) <= 1e-14


class TestLuoFu:
    def test_maximally_mixed(self):
        assert abs(luo_fu_bound(build_c_matrix(decompose(np.eye(9) / 9, 3, 3)))) <= 1e-15

    def test_bell(self):
        assert abs(luo_fu_bound(build_c_matrix(decompose(bell_state()))) - 0.5) <= 1e-12

    @pytest.mark.parametrize("m,n", DIMS)
    def test_matches_realignment(self, m, n):
        for seed in range(10):
            rho = random_density(m, n, seed)
            lf = luo_fu_bound(build_c_matrix(decompose(rho)))
            assert abs(lf - realigned_luo_fu(rho.matrix, m, n)) <= 1e-12

    def test_eq52_low_p_still_dominated(self):
        rep = compute_bounds(decompose(eq52_state(0.15)))
        assert rep.tight_bound >= rep.luo_fu_bound - 1e-10

    def test_eq52_gap_opens_at_one_half(self):
        # both bounds coincide below p = 1/2; realignment gives the Luo-Fu value independently
        for p in np.linspace(0.0, 0.5, 21):
            rho = eq52_state(p)
            tight = tight_bound(decompose(rho))
            assert abs(tight - realigned_luo_fu(rho.matrix, 3, 3)) <= 1e-12
        for p in np.linspace(0.51, 1.0, 20):
            rho = eq52_state(p)
            assert tight_bound(decompose(rho)) - realigned_luo_fu(rho.matrix, 3, 3) > 1e-4


class TestEpsilonCoefficients:
    def test_m3_values(self):
        eps = epsilon_table(3)
        assert eps[0, 0] == 1.0
        assert abs(eps[1, 0] + 0.5) <= 1e-15
        assert abs(eps[1, 1] - math.sqrt(0.75)) <= 1e-15

    @pytest.mark.parametrize("m", [3, 4, 5, 6, 9])
    def test_lower_triangular_first_column(self, m):
        eps = epsilon_table(m)
        np.testing.assert_array_equal(eps, np.tril(eps))
        np.testing.assert_allclose(eps[1:, 0], -1 / (m - 1), atol=1e-15)

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_coefficient_identity(self, m):
        for k in range(2, m):
            assert abs(coefficient_identity(m, k) - m / (2 * (m - 1))) <= 1e-12

    @pytest.mark.parametrize("m", range(2, 8))
    def test_simplex_geometry(self, m):
        eps = epsilon_table(m)
        gram = eps @ eps.T
        target = np.full((m - 1, m - 1), -1 / (m - 1))
        np.fill_diagonal(target, 1)
        np.testing.assert_allclose(gram, target, atol=1e-12)

    def test_rejects_m1(self):
        with pytest.raises(ValidationError):
            epsilon_table(1)


class TestOptimalIsometry:
    def test_m2(self):
        f = np.linalg.qr(np.random.default_rng(0).standard_normal((3, 3)))[0]
        iso = build_optimal_isometry(2, f)
        np.testing.assert_allclose(iso.E[0], f[:, 0], atol=1e-15)
        assert iso.A.shape == (2, 4)
        np.testing.assert_allclose(iso.A[0], np.r_[1, f[:, 0]] / math.sqrt(2), atol=1e-15)
        np.testing.assert_allclose(iso.A[1], np.r_[1, -f[:, 0]] / math.sqrt(2), atol=1e-15)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_invariants_for_any_orthonormal_frame(self, m):
        rng = np.random.default_rng(m)
        f = np.linalg.qr(rng.standard_normal((m * m - 1, m * m - 1)))[0]
        iso = build_optimal_isometry(m, f)
        for name, err in isometry_errors(iso).items():
            assert err <= 1e-10, name
        np.testing.assert_allclose(np.linalg.norm(iso.E, axis=1), 1, atol=1e-10)
        np.testing.assert_allclose(iso.E.sum(axis=0), 0, atol=1e-12)

    def test_rejects_too_few_vectors(self):
        with pytest.raises(ValidationError):
            build_optimal_isometry(3, np.eye(8)[:, :1])

    def test_rejects_m1(self):
        with pytest.raises(ValidationError):
            build_optimal_isometry(1, np.eye(1))


class TestClosedFormMaximum:
    @pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (3, 4)])
    def test_maximally_mixed(self, m, n):
        direct, closed = verify_closed_form_maximum(decompose(np.eye(m * n) / (m * n), m, n))
        assert abs(direct - 1 / (m * n)) <= 1e-15 and abs(closed - 1 / (m * n)) <= 1e-15

    def test_bell(self):
        direct, closed = verify_closed_form_maximum(decompose(bell_state()))
        assert abs(direct - closed) <= 1e-10
        # 1/4 + (2/8) * eta_1 with eta_1 = 1
        assert abs(closed - 0.5) <= 1e-12

    @pytest.mark.parametrize("m,n", DIMS)
    def test_random_states(self, m, n):
        for seed in range(20):
            direct, closed = verify_closed_form_maximum(decompose(random_density(m, n, seed)))
            assert abs(direct - closed) <= 1e-10

    @pytest.mark.parametrize("m,n", [(3, 3), (3, 4)])
    def test_no_relaxed_isometry_beats_it(self, m, n):
        # any simplex frame gives a relaxed isometry; none may exceed the closed form
        rng = np.random.default_rng(5)
        b = decompose(random_density(m, n, 1))
        c = build_c_matrix(b).entries
        best = closed_form_maximum(b, gram_matrix(b).eta)
        for _ in range(200):
            q = np.linalg.qr(rng.standard_normal((m * m - 1, m - 1)))[0]
            a = build_optimal_isometry(m, q).A
            assert np.sum((a @ c) ** 2) <= best + 1e-12


class TestInterlacing:
    def test_maximally_mixed(self):
        rep = interlacing_report(build_c_matrix(decompose(np.eye(9) / 9, 3, 3)))
        assert rep.holds
        np.testing.assert_allclose(rep.eta_up, 0, atol=1e-15)
        assert abs(rep.lam_up[-1] - 1 / 9) <= 1e-15

    def test_eq52_grid(self):
        for p in np.linspace(0, 1, 101):
            assert verify_interlacing(build_c_matrix(decompose(eq52_state(p))))

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 3)])
    def test_random_states_and_dominance(self, m, n):
        for seed in range(20):
            b = decompose(random_density(m, n, seed))
            c = build_c_matrix(b)
            rep = interlacing_report(c)
            assert rep.holds
            assert rep.border_error <= 1e-14
            assert tight_bound(b) >= luo_fu_bound(c) - 1e-10

    def test_detects_broken_chain(self):
        c = build_c_matrix(decompose(random_density(3, 3, 0)))
        bad = type(c)(c.m, c.n, c.entries.copy())
        bad.entries[0, 0] += 0.5  # a no longer matches the G block's border
        assert not verify_interlacing(bad)

    @pytest.mark.parametrize("m,n", DIMS)
    def test_trace_bookkeeping(self, m, n):
        for seed in range(10):
            rep = interlacing_report(build_c_matrix(decompose(random_density(m, n, seed))))
            assert rep.trace_gap <= 1e-10


class TestInvariances:
    @pytest.mark.parametrize("m,n", DIMS)
    def test_generator_order(self, m, n):
        rng = np.random.default_rng(m * 10 + n)
        rho = random_density(m, n, 4)
        ref = compute_bounds(decompose(rho))
        la = build_generator_basis(m).permuted(rng.permutation(m * m - 1))
        lb = build_generator_basis(n).permuted(rng.permutation(n * n - 1))
        rep = compute_bounds(decompose(rho, basis_a=la, basis_b=lb))
        assert abs(rep.tight_bound - ref.tight_bound) <= 1e-10
        assert abs(rep.luo_fu_bound - ref.luo_fu_bound) <= 1e-10
        np.testing.assert_allclose(rep.eta, ref.eta, atol=1e-10)

    @pytest.mark.parametrize("m,n", DIMS)
    def test_local_unitaries(self, m, n):
        rng = np.random.default_rng(3)
        for seed in range(5):
            rho = random_density(m, n, seed)
            u = np.kron(random_unitary(m, rng), random_unitary(n, rng))
            rotated = DensityMatrix(u @ rho.matrix @ u.conj().T, m, n)
            a, b = compute_bounds(decompose(rho)), compute_bounds(decompose(rotated))
            assert abs(a.tight_bound - b.tight_bound) <= 1e-8
            assert abs(a.luo_fu_bound - b.luo_fu_bound) <= 1e-8


class TestSandwich:
    @pytest.mark.parametrize("m,n", [(2, 2), (2, 3)])
    def test_qubit_oracle(self, m, n):
        for seed in range(5):
            rho = random_density(m, n, seed)
            rep = compute_bounds(decompose(rho))
            assert rep.tight_bound_clamped <= minimize_qubit_measurement(rho).value + 1e-6

    @pytest.mark.parametrize("m,n", [(3, 2), (3, 3), (3, 4)])
    def test_monte_carlo_upper_bound(self, m, n):
        for seed in range(3):
            rho = random_density(m, n, seed)
            rep = compute_bounds(decompose(rho))
            assert rep.tight_bound_clamped <= sample_measurement_upper_bound(rho, 100, seed).value + 1e-6
