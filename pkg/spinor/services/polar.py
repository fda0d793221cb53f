import logging
from typing import Optional, Sequence

import numpy as np
from django.core.exceptions import ValidationError

from spinor.domain import AlphaBranch, LounestoLabel, PolarRegular, PolarSingular, Spinor
from spinor.domain.spinor import SpinorLike
from spinor.exceptions import InconsistencyError
from spinor.services.bilinears import BilinearService
from spinor.services.clifford import PI_DIAGONAL, CliffordService
from spinor.services.lounesto import DEFAULT_TOL_CLASS, LounestoService


logger = logging.getLogger(__name__)

REGULAR_REST = np.array([1.0, 0.0, 1.0, 0.0], dtype=complex)
SINGULAR_REST = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex)
# Max deviation of the frame-reduced spinor from e^{iθ}(1,0,1,0) before the frame is declared degenerate.
FRAME_TOL = 1e-8


class PolarService:
    """Polar decomposition and reconstruction of regular and singular spinors."""

    @staticmethod
    def chiral_phase(beta: float) -> np.ndarray:
        """e^{-iβπ/2} as a diagonal matrix."""
        return np.diag(np.exp(-0.5j * beta * np.array(PI_DIAGONAL)))

    @staticmethod
    def dirac_inverse(matrix: np.ndarray) -> np.ndarray:
        gamma0 = CliffordService.build_gamma_basis().gamma0
        return gamma0 @ np.asarray(matrix).conj().T @ gamma0

    @staticmethod
    def axis_angle_from_third_axis(direction: np.ndarray) -> np.ndarray:
        """Axis-angle vector of the rotation taking (0, 0, 1) to the unit vector `direction`."""
        cosine = float(direction[2])
        axis = np.array([-direction[1], direction[0], 0.0])
        sine = float(np.linalg.norm(axis))
        if sine <= 1e-15:
            # Antiparallel ties are resolved by a half turn about the first axis.
            return np.zeros(3) if cosine > 0 else np.array([np.pi, 0.0, 0.0])
        return axis / sine * float(np.arctan2(sine, cosine))

    @classmethod
    def frame_vectors(cls, L_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(u, s): images of the rest-frame velocity and spin axis under L⁻¹."""
        lorentz = CliffordService.lorentz_vector_matrix(L_matrix)
        return lorentz[:, 0], lorentz[:, 3]

    @classmethod
    def assemble_regular(
        cls,
        phi: float,
        beta: float,
        rapidity: Sequence[float] | np.ndarray = (0.0, 0.0, 0.0),
        rotation: Sequence[float] | np.ndarray = (0.0, 0.0, 0.0),
        phase: float = 0.0,
    ) -> PolarRegular:
        frame = CliffordService.boost(rapidity).matrix @ CliffordService.rotation(rotation).matrix
        L_matrix = frame * np.exp(1j * phase)
        u, s = cls.frame_vectors(L_matrix)
        return PolarRegular(
            phi=phi,
            beta=beta,
            rapidity=np.asarray(rapidity, dtype=float),
            rotation=np.asarray(rotation, dtype=float),
            phase=phase,
            L_matrix=L_matrix,
            u=u,
            s=s,
        )

    @classmethod
    def decompose_regular(cls, psi: SpinorLike, tol: float = DEFAULT_TOL_CLASS) -> PolarRegular:
        """Boost to rest, rotate the spin onto the third axis, then read the leftover gauge phase."""
        spinor = Spinor.coerce(psi)
        klass = LounestoService.classify(spinor, tol)
        if not klass.is_regular:
            msg = f"Regular polar decomposition needs a regular spinor, got {klass.label.value}"
            raise ValidationError(msg)

        b = BilinearService.compute_bilinears(spinor)
        rho = float(np.hypot(b.Phi, b.Theta))
        phi = float(np.sqrt(rho / 2.0))
        beta = float(np.arctan2(b.Theta, b.Phi))
        u = b.U / rho
        s = b.S / rho

        speed = float(np.linalg.norm(u[1:]))
        rapidity = u[1:] / speed * np.arcsinh(speed) if speed > 0 else np.zeros(3)
        boost = CliffordService.boost(rapidity)
        s_rest = CliffordService.lorentz_vector_matrix(boost.inverse().matrix) @ s
        rotation = cls.axis_angle_from_third_axis(s_rest[1:] / np.linalg.norm(s_rest[1:]))

        frame = boost.matrix @ CliffordService.rotation(rotation).matrix
        reduced = cls.chiral_phase(-beta) @ cls.dirac_inverse(frame) @ spinor.components / phi
        phase = float(np.angle(reduced[0] + reduced[2]))
        defect = float(np.max(np.abs(reduced - np.exp(1j * phase) * REGULAR_REST)))
        if defect > FRAME_TOL:
            msg = f"Degenerate frame: reduced spinor deviates from the rest form by {defect:.3e}"
            raise InconsistencyError(msg)

        logger.debug("Regular decomposition: phi=%.6g beta=%.6g phase=%.6g", phi, beta, phase)
        return PolarRegular(
            phi=phi,
            beta=beta,
            rapidity=rapidity,
            rotation=rotation,
            phase=phase,
            L_matrix=frame * np.exp(1j * phase),
            u=u,
            s=s,
        )

    @classmethod
    def reconstruct_regular(cls, p: PolarRegular) -> Spinor:
        return Spinor(p.phi * cls.chiral_phase(p.beta) @ p.L_matrix @ REGULAR_REST)

    @classmethod
    def charge_conjugate_regular(cls, p: PolarRegular) -> Spinor:
        """iγ²ψ* in polar form: helicity flip of the rest spinor, β → β + π and reversed gauge phase."""
        flipped = np.array([0.0, 1.0, 0.0, 1.0], dtype=complex)
        lorentz = p.lorentz_matrix * np.exp(-1j * p.phase)
        return Spinor(p.phi * np.exp(0.5j * np.pi) * cls.chiral_phase(p.beta + np.pi) @ lorentz @ flipped)

    @classmethod
    def decompose_singular(cls, lam: SpinorLike, tol: float = DEFAULT_TOL_CLASS) -> PolarSingular:
        """
        Align the right-handed half with (0, 1) of the rest spinor through an SL(2, C)
        frame; the left half then fixes the gauge phase and the ratio a/b of the chiral
        weights a = cos(α/2) + sin(α/2), b = cos(α/2) − sin(α/2).
        """
        spinor = Spinor.coerce(lam)
        klass = LounestoService.classify(spinor, tol)
        if klass.is_regular:
            msg = f"Singular polar decomposition needs a singular spinor, got {klass.label.value}"
            raise ValidationError(msg)

        bil = BilinearService.compute_bilinears(spinor)
        sin_alpha = float(np.clip(-bil.S[0] / bil.U[0], -1.0, 1.0))
        left, right = spinor.left, spinor.right
        n_left = float(np.vdot(left, left).real)
        n_right = float(np.vdot(right, right).real)
        total = n_left + n_right
        a = np.sqrt(2.0 * n_left / total)
        b = np.sqrt(2.0 * n_right / total)
        w = np.array([np.conj(right[1]), -np.conj(right[0])])

        if n_right == 0.0:
            theta = 0.0
            xy = left * np.sqrt(2.0) / a
        elif n_left == 0.0:
            theta = 0.0
            xy = w * np.sqrt(2.0) / b
        else:
            kappa = np.vdot(w, left) / np.vdot(w, w)
            theta = float(np.angle(kappa)) / 2.0
            xy = np.exp(1j * theta) * np.sqrt(2.0) / b * w

        x, y = xy
        n = abs(x) ** 2 + abs(y) ** 2
        block = np.array([[x, -np.conj(y) / n], [y, np.conj(x) / n]])
        block_dagger_inv = np.linalg.inv(block).conj().T
        zero = np.zeros((2, 2), dtype=complex)
        L_matrix = np.exp(1j * theta) * np.block([[block, zero], [zero, block_dagger_inv]])

        handedness = None
        if klass.label is LounestoLabel.DIPOLE:
            handedness = "left" if sin_alpha > 0 else "right"
        logger.debug("Singular decomposition: sin_alpha=%.6g label=%s", sin_alpha, klass.label.value)
        return PolarSingular(
            sin_alpha=sin_alpha,
            alpha_branch=AlphaBranch.PRINCIPAL,
            phase=theta,
            L_matrix=L_matrix,
            handedness=handedness,
        )

    @staticmethod
    def reconstruct_singular(p: PolarSingular, alpha: Optional[float] = None) -> Spinor:
        """(1/√2)(cos(α/2)𝕀 − sin(α/2)π) L⁻¹ (1,0,0,1)ᵀ; alpha defaults to the branch-resolved p.alpha."""
        angle = p.alpha if alpha is None else float(alpha)
        weights = (np.cos(angle / 2.0) - np.sin(angle / 2.0) * np.array(PI_DIAGONAL)) / np.sqrt(2.0)
        return Spinor(weights * (p.L_matrix @ SINGULAR_REST))
