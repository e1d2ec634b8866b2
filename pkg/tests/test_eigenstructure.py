import numpy as np
import pytest

from tbdde import (DegenerateNormalization, compute_basis, eval_f, jac_x,
                   jac_y, predator_prey, synthetic_tb, tb_existence_test)

F1_PP = np.array([[0.0, -0.5], [0.0, 0.0]])
F2_PP = np.zeros((2, 2))


class TestExistenceTest:
    def test_predator_prey_point_passes(self):
        ex = tb_existence_test(F1_PP, F2_PP)
        assert ex.passed
        assert ex.rank == 1
        assert ex.range_value == pytest.approx(0.0, abs=1e-12)
        # (f2+I) phi2 - f2 phi1 / 2 reduces to phi2 = (0, -2) here
        assert ex.nondegeneracy_value == pytest.approx(-2.0)

    def test_identity_fails_rank(self):
        ex = tb_existence_test(np.eye(2), np.zeros((2, 2)))
        assert not ex.passed and not ex.rank_ok and ex.rank == 2

    def test_synthetic_positive_instance(self):
        f1 = np.array([[0.0, 1.0], [0.0, 0.0]])
        ex = tb_existence_test(f1, np.zeros((2, 2)))
        assert ex.rank_ok and ex.range_ok

    def test_perturbed_equilibrium_fails(self):
        # equilibrium of the predator-prey system at D = 0.45: prey solves
        # y/(1+y^2) = D, predator from the first equation
        model = predator_prey()
        D, K = 0.45, 2.0
        x1 = (1.0 - np.sqrt(1.0 - 4.0 * D * D)) / (2.0 * D)
        x2 = (1.0 - x1 / K) * (1.0 + x1 * x1)
        x = np.array([x1, x2])
        assert np.max(np.abs(eval_f(model, x, x, D, K))) < 1e-12
        f1 = jac_x(model, x, x, D, K)
        f2 = jac_y(model, x, x, D, K)
        assert not tb_existence_test(f1, f2).passed

    def test_spectral_caveat_reported(self):
        ex = tb_existence_test(F1_PP, F2_PP)
        assert "imaginary axis" in ex.spectral_caveat


class TestComputeBasis:
    def check_residuals(self, f1, f2, basis):
        scale = max(1.0, np.max(np.abs(f1)), np.max(np.abs(f2)))
        assert np.max(basis.residuals(f1, f2)) <= 1e-9 * scale

    def test_predator_prey_values(self):
        basis = compute_basis(F1_PP, F2_PP)
        self.check_residuals(F1_PP, F2_PP, basis)
        # phi1 along e1, phi2 along -e2 with |phi2| = 2 |phi1|
        assert basis.phi1[1] == pytest.approx(0.0, abs=1e-14)
        assert basis.phi1[0] > 0
        assert basis.phi2[1] / basis.phi1[0] == pytest.approx(-2.0)
        assert basis.psi2[0] == pytest.approx(0.0, abs=1e-14)

    def test_builtin_models(self):
        cases = [
            (predator_prey(), np.array([1.0, 1.0]), 0.5, 2.0),
            (synthetic_tb(), np.zeros(2), 0.0, 0.0),
        ]
        for model, x, lam, mu in cases:
            f1 = jac_x(model, x, x, lam, mu)
            f2 = jac_y(model, x, x, lam, mu)
            self.check_residuals(f1, f2, compute_basis(f1, f2))

    def test_scalar_closed_form(self):
        # n = 1 with f1 = 1, f2 = -1: exact algebra gives
        # phi1 = sqrt(2), phi2 = sqrt(2)/3, psi1 = 0, psi2 = sqrt(2)
        f1 = np.array([[1.0]])
        f2 = np.array([[-1.0]])
        basis = compute_basis(f1, f2)
        self.check_residuals(f1, f2, basis)
        r2 = np.sqrt(2.0)
        assert basis.phi1[0] == pytest.approx(r2)
        assert basis.phi2[0] == pytest.approx(r2 / 3.0)
        assert basis.psi1[0] == pytest.approx(0.0, abs=1e-14)
        assert basis.psi2[0] == pytest.approx(r2)

    def test_synthetic_frozen_values(self):
        # from the exact-arithmetic oracle (tools/synthetic_oracle.py)
        model = synthetic_tb()
        x = np.zeros(2)
        f1 = jac_x(model, x, x, 0.0, 0.0)
        f2 = jac_y(model, x, x, 0.0, 0.0)
        basis = compute_basis(f1, f2)
        r2 = np.sqrt(2.0)
        assert basis.phi1 == pytest.approx([r2 / 2.0, 0.0], abs=1e-12)
        assert basis.phi2 == pytest.approx([r2 / 8.0, r2], abs=1e-12)
        assert basis.psi1 == pytest.approx([r2 / 2.0, 0.0], abs=1e-12)
        assert basis.psi2 == pytest.approx([0.0, r2 / 2.0], abs=1e-12)

    def test_deterministic(self):
        a = compute_basis(F1_PP, F2_PP)
        b = compute_basis(F1_PP, F2_PP)
        for u, v in ((a.phi1, b.phi1), (a.phi2, b.phi2),
                     (a.psi1, b.psi1), (a.psi2, b.psi2)):
            assert np.array_equal(u, v)

    def test_scaling_does_not_break_identities(self):
        # the identities are equalities in the given matrices: rescaling the
        # matrices gives a basis whose residuals still vanish
        for scale in (0.5, 3.0):
            f1, f2 = scale * F1_PP, scale * F2_PP
            basis = compute_basis(f1, f2)
            self.check_residuals(f1, f2, basis)

    def test_full_rank_rejected(self):
        with pytest.raises(DegenerateNormalization):
            compute_basis(np.eye(2), np.zeros((2, 2)))

    def test_pinning_offset_gives_same_basis(self):
        # the normalization step absorbs the phi2 pinning freedom
        a = compute_basis(F1_PP, F2_PP)
        b = compute_basis(F1_PP, F2_PP, beta_phi2=0.7)
        assert a.phi2 == pytest.approx(b.phi2, abs=1e-12)
        assert a.phi1 == pytest.approx(b.phi1, abs=1e-12)
