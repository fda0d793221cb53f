from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from services import FiniteDifferenceService
from spinor.domain.arrays import finite_float, frozen_array
from spinor.domain.connection import Sampler, ScalarSampler, as_point
from spinor.domain.spinor import Spinor


@dataclass(frozen=True)
class SpinorField:
    """A spinor-valued sampler with an optional analytic gradient x → ∂_μψ (shape (4, 4), μ first)."""

    value: Sampler
    gradient: Optional[Sampler] = None
    description: str = "custom"

    def at(self, x: Sequence[float] | np.ndarray) -> np.ndarray:
        return frozen_array(self.value(as_point(x)), complex, (4,), "spinor field sample")

    def derivative(self, x: Sequence[float] | np.ndarray, h: float, order: int = 4) -> np.ndarray:
        point = as_point(x)
        if self.gradient is not None:
            return frozen_array(self.gradient(point), complex, (4, 4), "spinor field gradient")
        raw = FiniteDifferenceService.gradient(self.at, point, h, order)
        return frozen_array(raw, complex, (4, 4), "spinor field gradient")

    @classmethod
    def plane_wave(cls, amplitude: Sequence[complex] | np.ndarray, momentum: Sequence[float]) -> SpinorField:
        """ψ(x) = amplitude · exp(-i P_μ x^μ) for a lower-index momentum P."""
        amp = Spinor.coerce(amplitude).components
        p = frozen_array(momentum, float, (4,), "momentum")

        def value(x: np.ndarray) -> np.ndarray:
            return amp * np.exp(-1j * float(p @ x))

        def gradient(x: np.ndarray) -> np.ndarray:
            return np.outer(-1j * p, value(x))

        return cls(value=value, gradient=gradient, description="plane-wave")


@dataclass(frozen=True)
class RegularPolarField:
    """Regular polar fields β(x), φ(x), u^a(x), s^a(x); gradients are ∂_μβ and ∂_μφ when supplied."""

    beta: ScalarSampler
    phi: ScalarSampler
    u: Sampler
    s: Sampler
    beta_gradient: Optional[Sampler] = None
    phi_gradient: Optional[Sampler] = None


@dataclass(frozen=True)
class SingularPolarField:
    """Singular polar fields α(x), U^a(x), M^{ab}(x); alpha_gradient is ∂_μα when supplied."""

    alpha: ScalarSampler
    U: Sampler
    M: Sampler
    alpha_gradient: Optional[Sampler] = None


@dataclass(frozen=True, eq=False)
class DiracResidual:
    residual: Spinor
    norm: float
    spinor_norm: float = 0.0

    @property
    def relative(self) -> float:
        return self.norm / max(self.spinor_norm, 1.0)

    @classmethod
    def of(cls, vector: np.ndarray, psi: np.ndarray) -> DiracResidual:
        residual = Spinor(vector)
        return cls(residual=residual, norm=residual.norm, spinor_norm=float(np.linalg.norm(psi)))


@dataclass(frozen=True)
class PolarResiduals:
    """Left sides of a polar field-equation system, keyed by equation name."""

    system: str
    components: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def eq_beta(self) -> np.ndarray:
        return self.components["eq_beta"]

    @property
    def eq_phi(self) -> np.ndarray:
        return self.components["eq_phi"]

    @property
    def max_abs(self) -> float:
        return max((float(np.max(np.abs(v))) for v in self.components.values()), default=0.0)


@dataclass(frozen=True, eq=False)
class ElkoState:
    chi: float
    omega: float
    helicity: str
    conjugacy: str
    components: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "chi", finite_float(self.chi, "chi"))
        object.__setattr__(self, "omega", finite_float(self.omega, "omega"))
        object.__setattr__(self, "components", frozen_array(self.components, complex, (4,), "Elko components"))

    @property
    def key(self) -> str:
        return f"{self.conjugacy}{self.helicity}"

    @property
    def spinor(self) -> Spinor:
        return Spinor(self.components)

    def transformed(self, matrix: np.ndarray) -> ElkoState:
        return ElkoState(
            chi=self.chi,
            omega=self.omega,
            helicity=self.helicity,
            conjugacy=self.conjugacy,
            components=np.asarray(matrix) @ self.components,
        )


