import numpy as np
import pytest
from django.core.exceptions import ValidationError

from services import FiniteDifferenceService
from spinor.domain import ConnectionField, Path
from spinor.domain.planewave import LEFT_ORDERED
from spinor.services import CliffordService, ConnectionService, PlaneWaveService

from .conftest import MASS, random_spinors


MAJORANA = np.array([1.0, 0.0, 0.0, 1.0])
ORIGIN = np.zeros(4)


def along_z(z: float, steps: int = 1) -> Path:
    return Path(start=ORIGIN, end=[0.0, z, 0.0, 0.0], steps=steps)


def rotating_connection() -> ConnectionField:
    """P = 0 with non-commuting rotation generators whose weight grows along the path."""

    def tensor(x: np.ndarray) -> np.ndarray:
        return ConnectionService.tensor_from_entries([(1, 2, 1, 1.5 * x[1]), (2, 3, 1, 1.0)])

    return ConnectionField(P=lambda _x: np.zeros(4), R=tensor, description="rotating")


class TestExpand:
    @pytest.mark.parametrize("z", [0.1, 1.0])
    @pytest.mark.parametrize("steps", [1, 3, 16])
    def test_flagpole_closed_form(self, flagpole_conn, z, steps):
        result = PlaneWaveService.expand(MAJORANA, along_z(z, steps), flagpole_conn)
        expected = np.array([np.exp(1j * MASS * z), 0.0, 0.0, np.exp(-1j * MASS * z)])
        assert np.allclose(result.spinor.components, expected, rtol=0.0, atol=1e-12)
        assert result.step_count == steps
        assert result.ordering == LEFT_ORDERED

    def test_flagpole_transport_is_diagonal_phase(self, flagpole_conn):
        z = 0.8
        transport = PlaneWaveService.transport(along_z(z, 4), flagpole_conn)
        phases = np.exp(1j * MASS * z * np.array([1, -1, 1, -1]))
        assert np.allclose(transport, np.diag(phases), atol=1e-12)

    def test_constant_momentum_is_plane_wave(self, rng):
        p = np.array([0.7, 0.2, -0.3, 0.1])
        end = np.array([1.0, 0.5, 0.2, -0.4])
        conn = ConnectionField.constant(p, np.zeros((4, 4, 4)))
        psi0 = random_spinors(rng, 1)[0]
        result = PlaneWaveService.expand(psi0, Path(start=ORIGIN, end=end, steps=5), conn)
        assert np.allclose(result.spinor.components, np.exp(-1j * (p @ end)) * psi0, atol=1e-12)

    def test_zero_connection_leaves_spinor(self, rng):
        conn = ConnectionField.constant(np.zeros(4), np.zeros((4, 4, 4)))
        psi0 = random_spinors(rng, 1)[0]
        result = PlaneWaveService.expand(psi0, Path(start=ORIGIN, end=[1.0, -2.0, 0.5, 3.0], steps=7), conn)
        assert np.array_equal(result.spinor.components, psi0)

    def test_commuting_integrand_is_step_independent(self):
        r = ConnectionService.tensor_from_entries([(1, 2, 1, 0.6)])

        def momentum(x: np.ndarray) -> np.ndarray:
            return np.array([1.0 + 0.5 * x[1], 0.0, 0.0, 0.0])

        conn = ConnectionField(P=momentum, R=lambda _x: r)
        end = np.array([1.0, 1.0, 0.0, 0.0])
        psi0 = np.array([1.0, 0.5j, -0.2, 0.3])
        basis = CliffordService.build_gamma_basis()
        closed = CliffordService.matrix_exponential(-(1.25j * np.eye(4) + r[1, 2, 1] * basis.sigma[1, 2]))
        for steps in (1, 2, 7, 32):
            result = PlaneWaveService.expand(psi0, Path(start=ORIGIN, end=end, steps=steps), conn)
            assert np.allclose(result.spinor.components, closed @ psi0, atol=1e-12)

    def test_step_refinement_converges(self):
        conn = rotating_connection()
        path = Path(start=ORIGIN, end=[0.0, 1.0, 0.0, 0.0])
        endpoints = {
            steps: PlaneWaveService.expand(MAJORANA, Path(start=path.start, end=path.end, steps=steps), conn).spinor.components
            for steps in (64, 128, 256, 512)
        }
        changes = [np.max(np.abs(endpoints[2 * n] - endpoints[n])) for n in (64, 128, 256)]
        assert changes[0] > changes[1] > changes[2]
        assert changes[2] < 1e-4

    def test_rotations_conserve_norm(self, rng):
        conn = rotating_connection()
        for psi0 in random_spinors(rng, 20):
            result = PlaneWaveService.expand(psi0, Path(start=ORIGIN, end=[0.3, 2.0, -0.5, 0.1], steps=24), conn)
            assert np.vdot(result.spinor.components, result.spinor.components).real == pytest.approx(
                np.vdot(psi0, psi0).real, abs=1e-10
            )

    def test_boost_generators_change_norm(self):
        conn = ConnectionField.constant(np.zeros(4), ConnectionService.tensor_from_entries([(0, 3, 3, 1.0)]))
        result = PlaneWaveService.expand([1.0, 0.0, 1.0, 0.0], Path(start=ORIGIN, end=[0.0, 0.0, 0.0, 1.0]), conn)
        assert abs(np.linalg.norm(result.spinor.components) - np.sqrt(2.0)) > 1e-3

    def test_as_field_follows_expansion(self, flagpole_conn):
        field = PlaneWaveService.as_field(MAJORANA, flagpole_conn, steps=3)
        for z in (-0.4, 0.0, 1.3):
            expected = np.array([np.exp(1j * MASS * z), 0.0, 0.0, np.exp(-1j * MASS * z)])
            assert np.allclose(field.at([0.0, z, 0.0, 0.0]), expected, atol=1e-12)

    @pytest.mark.parametrize("steps", [0, -1, 1.5, True])
    def test_invalid_steps_rejected(self, steps):
        with pytest.raises(ValidationError):
            Path(start=ORIGIN, end=[1.0, 0.0, 0.0, 0.0], steps=steps)

    def test_non_finite_connection_rejected(self):
        conn = ConnectionField(P=lambda _x: np.array([np.nan, 0.0, 0.0, 0.0]), R=lambda _x: np.zeros((4, 4, 4)))
        with pytest.raises(ValidationError):
            PlaneWaveService.expand(MAJORANA, along_z(1.0), conn)


class TestChiralSplit:
    def test_flagpole_solution_coefficients_are_inverse(self):
        for z in (0.1, 1.0, 2.5):
            split = PlaneWaveService.chiral_split([np.exp(1j * z), 0.0, 0.0, np.exp(-1j * z)])
            assert np.allclose(split.left, [np.exp(1j * z), 0.0])
            assert np.allclose(split.right, [0.0, np.exp(-1j * z)])
            assert abs(split.left[0] * split.right[1] - 1.0) < 1e-12

    def test_rest_frame_spinor_has_equal_parts(self):
        split = PlaneWaveService.chiral_split([1.0, 0.0, 1.0, 0.0])
        assert np.array_equal(split.left, [1.0, 0.0])
        assert np.array_equal(split.right, [1.0, 0.0])

    def test_weyl_spinor_has_no_right_part(self):
        split = PlaneWaveService.chiral_split([1.0, 0.0, 0.0, 0.0])
        assert np.array_equal(split.right, [0.0, 0.0])

    def test_embeddings_recombine(self, rng):
        psi = random_spinors(rng, 1)[0]
        split = PlaneWaveService.chiral_split(psi)
        assert np.allclose(split.left_spinor.components + split.right_spinor.components, psi, atol=0.0)


class TestVerifyExpansion:
    def test_flagpole_second_order(self, flagpole_conn):
        path = along_z(1.0)
        coarse = PlaneWaveService.verify_expansion(MAJORANA, path, flagpole_conn, h=1e-4)
        fine = PlaneWaveService.verify_expansion(MAJORANA, path, flagpole_conn, h=5e-5)
        assert coarse < 1e-6
        assert 3.5 <= FiniteDifferenceService.convergence_ratio(coarse, fine) <= 4.5

    def test_constant_momentum_second_order(self):
        conn = ConnectionField.constant([MASS, 0.0, 0.0, 0.0], np.zeros((4, 4, 4)))
        path = Path(start=ORIGIN, end=[1.0, 0.0, 0.0, 0.0])
        coarse = PlaneWaveService.verify_expansion([1.0, 0.0, 1.0, 0.0], path, conn, h=1e-4)
        fine = PlaneWaveService.verify_expansion([1.0, 0.0, 1.0, 0.0], path, conn, h=5e-5)
        assert coarse < 1e-7
        assert 3.5 <= FiniteDifferenceService.convergence_ratio(coarse, fine) <= 4.5

    @pytest.mark.parametrize("h", [1e-2, 1e-4, 1e-6])
    def test_zero_connection(self, h):
        conn = ConnectionField.constant(np.zeros(4), np.zeros((4, 4, 4)))
        path = Path(start=ORIGIN, end=[0.5, 0.5, 0.0, 0.0])
        assert PlaneWaveService.verify_expansion(MAJORANA, path, conn, h=h) < 1e-12

    def test_zero_length_path_rejected(self, flagpole_conn):
        with pytest.raises(ValidationError):
            PlaneWaveService.verify_expansion(MAJORANA, Path(start=ORIGIN, end=ORIGIN), flagpole_conn)

    @pytest.mark.parametrize("h", [0.0, -1e-4, float("nan")])
    def test_invalid_step_rejected(self, flagpole_conn, h):
        with pytest.raises(ValidationError):
            PlaneWaveService.verify_expansion(MAJORANA, along_z(1.0), flagpole_conn, h=h)
