from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from django.core.exceptions import ValidationError

from spinor.domain.arrays import finite_float, frozen_array


class AlphaBranch(str, Enum):
    # alpha in [-pi/2, pi/2]
    PRINCIPAL = "principal"
    # pi - alpha: same sin(alpha), opposite cos(alpha)
    COMPLEMENT = "complement"


@dataclass(frozen=True, eq=False)
class PolarRegular:
    """ψ = φ e^{-iβπ/2} L⁻¹ (1,0,1,0)ᵀ with L⁻¹ = boost · rotation · e^{i phase}."""

    phi: float
    beta: float
    rapidity: np.ndarray
    rotation: np.ndarray
    phase: float
    L_matrix: np.ndarray
    u: np.ndarray
    s: np.ndarray

    def __post_init__(self) -> None:
        phi = finite_float(self.phi, "phi")
        if phi <= 0:
            msg = f"Polar module phi must be positive, got {phi}"
            raise ValidationError(msg)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "beta", finite_float(self.beta, "beta"))
        object.__setattr__(self, "phase", finite_float(self.phase, "phase"))
        object.__setattr__(self, "rapidity", frozen_array(self.rapidity, float, (3,), "rapidity"))
        object.__setattr__(self, "rotation", frozen_array(self.rotation, float, (3,), "rotation"))
        object.__setattr__(self, "L_matrix", frozen_array(self.L_matrix, complex, (4, 4), "L_matrix"))
        object.__setattr__(self, "u", frozen_array(self.u, float, (4,), "u"))
        object.__setattr__(self, "s", frozen_array(self.s, float, (4,), "s"))

    @property
    def lorentz_matrix(self) -> np.ndarray:
        """L⁻¹ with the gauge phase removed."""
        return self.L_matrix * np.exp(-1j * self.phase)


@dataclass(frozen=True, eq=False)
class PolarSingular:
    """λ = (1/√2)(cos(α/2)𝕀 − sin(α/2)π) L⁻¹ (1,0,0,1)ᵀ."""

    sin_alpha: float
    alpha_branch: AlphaBranch
    phase: float
    L_matrix: np.ndarray
    handedness: str | None = None

    def __post_init__(self) -> None:
        sin_alpha = finite_float(self.sin_alpha, "sin_alpha")
        if abs(sin_alpha) > 1.0:
            msg = f"sin_alpha must lie in [-1, 1], got {sin_alpha}"
            raise ValidationError(msg)
        object.__setattr__(self, "sin_alpha", sin_alpha)
        object.__setattr__(self, "alpha_branch", AlphaBranch(self.alpha_branch))
        object.__setattr__(self, "phase", finite_float(self.phase, "phase"))
        object.__setattr__(self, "L_matrix", frozen_array(self.L_matrix, complex, (4, 4), "L_matrix"))

    @property
    def alpha(self) -> float:
        principal = float(np.arcsin(self.sin_alpha))
        if self.alpha_branch is AlphaBranch.PRINCIPAL:
            return principal
        return float(np.pi - principal)

    def with_branch(self, branch: AlphaBranch) -> PolarSingular:
        return PolarSingular(
            sin_alpha=self.sin_alpha,
            alpha_branch=branch,
            phase=self.phase,
            L_matrix=self.L_matrix,
            handedness=self.handedness,
        )
