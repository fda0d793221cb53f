import logging
from functools import lru_cache
from itertools import permutations
from typing import Any, Sequence

import numpy as np
from scipy.linalg import expm

from spinor.domain import INDEX_PAIRS, GammaBasis, SpinorTransformation
from spinor.domain.arrays import finite_float, frozen_array
from spinor.exceptions import InconsistencyError


logger = logging.getLogger(__name__)

BASIS_TOL = 1e-14

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
PI_DIAGONAL = (-1.0, -1.0, 1.0, 1.0)

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


class CliffordService:
    """Fixed chiral Clifford basis, spinor transformations and the 4×4 matrix exponential."""

    @staticmethod
    def levi_civita() -> np.ndarray:
        """Totally antisymmetric symbol with [0, 1, 2, 3] = +1 (no metric sign applied)."""
        symbol = np.zeros((4, 4, 4, 4))
        for perm in permutations(range(4)):
            inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
            symbol[perm] = -1.0 if inversions % 2 else 1.0
        return symbol

    @staticmethod
    def _max_abs(values: np.ndarray) -> float:
        return float(np.max(np.abs(values)))

    @staticmethod
    @lru_cache(maxsize=1)
    def build_gamma_basis() -> GammaBasis:
        """
        Build and verify the chiral basis. The sign of ε_{0123} is calibrated so that
        2iσ_{ab}π = ε_{abcd}σ^{cd}; every algebraic invariant is checked to BASIS_TOL.
        """
        gamma = np.empty((4, 4, 4), dtype=complex)
        gamma[0] = np.block([[_Z2, _I2], [_I2, _Z2]])
        for k, pauli in enumerate(PAULI, start=1):
            gamma[k] = np.block([[_Z2, pauli], [-pauli, _Z2]])
        pi = np.diag(PI_DIAGONAL).astype(complex)
        identity = np.eye(4, dtype=complex)

        products = np.einsum("aij,bjk->abik", gamma, gamma)
        sigma = (products - products.transpose(1, 0, 2, 3)) / 4.0
        sigma_lower = np.einsum("ac,bd,cdij->abij", ETA, ETA, sigma)

        symbol = CliffordService.levi_civita()
        lhs = 2j * np.einsum("abij,jk->abik", sigma_lower, pi)
        rhs = np.einsum("abcd,cdij->abij", symbol, sigma)
        defects = {sign: CliffordService._max_abs(lhs - sign * rhs) for sign in (1.0, -1.0)}
        epsilon_sign = min(defects, key=defects.__getitem__)
        epsilon = epsilon_sign * symbol

        calibration = {
            "anticommutator": CliffordService._max_abs(
                products + products.transpose(1, 0, 2, 3) - 2.0 * np.einsum("ab,ij->abij", ETA, identity)
            ),
            "pi_duality": defects[epsilon_sign],
            "pi_square": CliffordService._max_abs(pi @ pi - identity),
            "pi_anticommutes": CliffordService._max_abs(
                np.einsum("ij,ajk->aik", pi, gamma) + np.einsum("aij,jk->aik", gamma, pi)
            ),
            "dirac_adjoint": CliffordService._max_abs(
                np.einsum("ij,akj,kl->ail", gamma[0], gamma.conj(), gamma[0]) - gamma
            ),
            "commutator": CliffordService._max_abs(products - products.transpose(1, 0, 2, 3) - 4.0 * sigma),
        }
        failed = {name: value for name, value in calibration.items() if value > BASIS_TOL}
        if failed:
            msg = f"Gamma basis violates its defining relations: {failed}"
            raise InconsistencyError(msg)

        logger.debug("Gamma basis built with epsilon_0123 = %+.0f", epsilon_sign)
        return GammaBasis(gamma=gamma, pi=pi, sigma=sigma, eta=ETA, epsilon=epsilon, calibration=calibration)

    @classmethod
    def conventions(cls) -> dict[str, Any]:
        basis = cls.build_gamma_basis()
        return {
            "representation": "chiral",
            "signature": "+---",
            "epsilon_0123": float(basis.epsilon[0, 1, 2, 3]),
            "pi_diagonal": [float(v) for v in PI_DIAGONAL],
        }

    @staticmethod
    def matrix_exponential(matrix: np.ndarray) -> np.ndarray:
        """Dense exponential by scaling and squaring with a Padé approximant."""
        m = frozen_array(matrix, complex, (4, 4), "matrix")
        with np.errstate(over="ignore", invalid="ignore"):
            result = expm(m)
        if not np.all(np.isfinite(result)):
            msg = f"Matrix exponential overflowed (input norm {np.linalg.norm(m):.3e})"
            raise OverflowError(msg)
        return np.asarray(result)

    @classmethod
    def generator(cls, theta_ab: Sequence[float] | np.ndarray, theta: float = 0.0, q: float = 0.0) -> np.ndarray:
        """½θ_abσ^ab + iqθ𝕀 with θ_ab listed once per pair a < b."""
        basis = cls.build_gamma_basis()
        params = frozen_array(theta_ab, float, (6,), "Lorentz parameters")
        total = 1j * finite_float(q, "charge") * finite_float(theta, "gauge parameter") * np.eye(4, dtype=complex)
        for value, (a, b) in zip(params, INDEX_PAIRS):
            total = total + value * basis.sigma[a, b]
        return total

    @classmethod
    def spinor_transformation(
        cls, theta_ab: Sequence[float] | np.ndarray, theta: float = 0.0, q: float = 0.0
    ) -> SpinorTransformation:
        matrix = cls.matrix_exponential(cls.generator(theta_ab, theta, q))
        return SpinorTransformation(matrix=matrix, params=np.asarray(theta_ab, dtype=float), theta=theta, q=q)

    @classmethod
    def boost(cls, rapidity: Sequence[float] | np.ndarray) -> SpinorTransformation:
        """Pure boost along +rapidity with magnitude |rapidity|."""
        zeta = frozen_array(rapidity, float, (3,), "rapidity")
        return cls.spinor_transformation(np.concatenate([zeta, np.zeros(3)]))

    @classmethod
    def rotation(cls, axis_angle: Sequence[float] | np.ndarray) -> SpinorTransformation:
        """Right-handed rotation by |axis_angle| about its direction: θ_ij = ε_ijk ϑ_k."""
        v = frozen_array(axis_angle, float, (3,), "rotation")
        return cls.spinor_transformation(np.array([0.0, 0.0, 0.0, v[2], -v[1], v[0]]))

    @classmethod
    def phase(cls, angle: float, q: float = 1.0) -> SpinorTransformation:
        return cls.spinor_transformation(np.zeros(6), theta=angle, q=q)

    @classmethod
    def lorentz_vector_matrix(cls, matrix: np.ndarray) -> np.ndarray:
        """
        Real Λ^a_b with S⁻¹γ^aS = Λ^a_bγ^b, so the vector bilinears of Sψ are Λ applied
        to those of ψ. S⁻¹ is taken as γ⁰S†γ⁰, valid for Lorentz-times-phase matrices.
        """
        basis = cls.build_gamma_basis()
        s = frozen_array(matrix, complex, (4, 4), "transformation matrix")
        s_inv = basis.gamma0 @ s.conj().T @ basis.gamma0
        traces = np.einsum("ij,ajk,kl,bli->ab", s_inv, basis.gamma, s, basis.gamma_lower)
        return np.real(traces) / 4.0
