import numpy as np
import pytest
from django.core.exceptions import ValidationError
from hypothesis import given, settings
from hypothesis import strategies as st

from spinor.domain import INDEX_PAIRS, SpinorTransformation
from spinor.services import CliffordService
from spinor.services.clifford import BASIS_TOL


angles = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


class TestGammaBasis:
    def test_anticommutators_match_metric(self, basis):
        identity = np.eye(4)
        for a in range(4):
            for b in range(4):
                anti = basis.gamma[a] @ basis.gamma[b] + basis.gamma[b] @ basis.gamma[a]
                assert np.max(np.abs(anti - 2.0 * basis.eta[a, b] * identity)) <= BASIS_TOL

    def test_diagonal_anticommutators(self, basis):
        assert np.allclose(2 * basis.gamma0 @ basis.gamma0, 2 * np.eye(4), atol=0)
        assert np.allclose(2 * basis.gamma1 @ basis.gamma1, -2 * np.eye(4), atol=0)

    def test_pi_duality(self, basis):
        for a in range(4):
            for b in range(4):
                lhs = 2j * basis.sigma_lower[a, b] @ basis.pi
                rhs = np.einsum("cd,cdij->ij", basis.epsilon[a, b], basis.sigma)
                assert np.max(np.abs(lhs - rhs)) <= BASIS_TOL

    def test_pi_squares_to_identity_and_anticommutes(self, basis):
        assert np.max(np.abs(basis.pi @ basis.pi - np.eye(4))) <= BASIS_TOL
        for a in range(4):
            assert np.max(np.abs(basis.pi @ basis.gamma[a] + basis.gamma[a] @ basis.pi)) <= BASIS_TOL

    def test_dirac_adjoint_and_commutator(self, basis):
        for a in range(4):
            adjoint = basis.gamma0 @ basis.gamma[a].conj().T @ basis.gamma0
            assert np.max(np.abs(adjoint - basis.gamma[a])) <= BASIS_TOL
            for b in range(4):
                commutator = basis.gamma[a] @ basis.gamma[b] - basis.gamma[b] @ basis.gamma[a]
                assert np.max(np.abs(commutator - 4.0 * basis.sigma[a, b])) <= BASIS_TOL

    def test_calibration_is_recorded(self, basis):
        assert set(basis.calibration) == {
            "anticommutator",
            "pi_duality",
            "pi_square",
            "pi_anticommutes",
            "dirac_adjoint",
            "commutator",
        }
        assert max(basis.calibration.values()) <= BASIS_TOL
        assert basis.epsilon[0, 1, 2, 3] == 1.0
        assert basis.epsilon_upper[0, 1, 2, 3] == -1.0

    def test_basis_is_read_only(self, basis):
        with pytest.raises(ValueError):
            basis.gamma[0, 0, 0] = 1.0

    def test_conventions_block(self):
        assert CliffordService.conventions() == {
            "representation": "chiral",
            "signature": "+---",
            "epsilon_0123": 1.0,
            "pi_diagonal": [-1.0, -1.0, 1.0, 1.0],
        }


class TestSpinorTransformation:
    def test_zero_parameters_give_identity(self):
        s = CliffordService.spinor_transformation(np.zeros(6))
        assert np.allclose(s.matrix, np.eye(4), atol=1e-15)

    def test_full_turn_is_minus_identity(self):
        s = CliffordService.rotation([0.0, 0.0, 2.0 * np.pi])
        assert np.allclose(s.matrix, -np.eye(4), atol=1e-12)

    def test_boost_along_third_axis(self):
        eta = 0.7
        boosted = CliffordService.boost([0.0, 0.0, eta]).apply(np.array([1.0, 0.0, 1.0, 0.0]))
        expected = np.array([np.exp(-eta / 2), 0.0, np.exp(eta / 2), 0.0])
        assert np.allclose(boosted, expected, atol=1e-13)

    def test_phase_is_scalar(self):
        s = CliffordService.phase(0.4, q=2.0)
        assert np.allclose(s.matrix, np.exp(0.8j) * np.eye(4), atol=1e-14)

    @settings(deadline=None, max_examples=50)
    @given(st.lists(angles, min_size=3, max_size=3), st.sampled_from(["boost", "rotation"]))
    def test_single_generator_inverse(self, values, kind):
        transform = getattr(CliffordService, kind)(values)
        negated = getattr(CliffordService, kind)([-v for v in values])
        assert np.allclose(transform.matrix @ negated.matrix, np.eye(4), atol=1e-12)
        assert np.allclose(transform.matrix @ transform.inverse().matrix, np.eye(4), atol=1e-12)

    @settings(deadline=None, max_examples=50)
    @given(angles, st.floats(min_value=-3.0, max_value=3.0, allow_nan=False))
    def test_phase_inverse(self, theta, q):
        forward = CliffordService.spinor_transformation(np.zeros(6), theta=theta, q=q)
        backward = CliffordService.spinor_transformation(np.zeros(6), theta=-theta, q=q)
        assert np.allclose(forward.matrix @ backward.matrix, np.eye(4), atol=1e-12)

    def test_determinant_has_unit_modulus(self, rng):
        for _ in range(20):
            s = CliffordService.spinor_transformation(rng.uniform(-1, 1, 6), rng.uniform(-3, 3), rng.uniform(-2, 2))
            assert abs(abs(np.linalg.det(s.matrix)) - 1.0) < 1e-12

    def test_lorentz_matrix_of_boost(self):
        rapidity = 0.5
        lorentz = CliffordService.lorentz_vector_matrix(CliffordService.boost([rapidity, 0.0, 0.0]).matrix)
        expected = np.eye(4)
        expected[0, 0] = expected[1, 1] = np.cosh(rapidity)
        expected[0, 1] = expected[1, 0] = np.sinh(rapidity)
        assert np.allclose(lorentz, expected, atol=1e-13)

    def test_params_follow_pair_order(self):
        assert INDEX_PAIRS == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
        s = CliffordService.rotation([0.1, 0.2, 0.3])
        assert np.allclose(s.params, [0.0, 0.0, 0.0, 0.3, -0.2, 0.1])

    def test_non_finite_parameters_rejected(self):
        with pytest.raises(ValidationError):
            CliffordService.spinor_transformation([np.nan, 0, 0, 0, 0, 0])
        with pytest.raises(ValidationError):
            SpinorTransformation(matrix=np.eye(4), params=np.zeros(5))


class TestMatrixExponential:
    def test_zero(self):
        assert np.array_equal(CliffordService.matrix_exponential(np.zeros((4, 4))), np.eye(4))

    def test_diagonal(self):
        d = np.array([0.3, -1.2, 2.0 + 1j, -0.5j])
        assert np.allclose(CliffordService.matrix_exponential(np.diag(d)), np.diag(np.exp(d)), rtol=1e-13)

    def test_flagpole_rotation(self, basis):
        mz = 0.8
        result = CliffordService.matrix_exponential(mz * basis.gamma2 @ basis.gamma1)
        expected = np.diag(np.exp(1j * mz * np.array([1, -1, 1, -1])))
        assert np.allclose(result, expected, atol=1e-13)

    def test_inverse_pairs(self, rng):
        for _ in range(50):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            a *= rng.uniform(0, 5) / np.linalg.norm(a)
            product = CliffordService.matrix_exponential(a) @ CliffordService.matrix_exponential(-a)
            assert np.allclose(product, np.eye(4), atol=1e-12)

    def test_overflow_is_reported(self):
        with pytest.raises(OverflowError):
            CliffordService.matrix_exponential(np.diag([800.0, 0.0, 0.0, 0.0]))

    def test_bad_shape_rejected(self):
        with pytest.raises(ValidationError):
            CliffordService.matrix_exponential(np.zeros((3, 3)))
