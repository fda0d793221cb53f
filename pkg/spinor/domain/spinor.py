from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence, Union

import numpy as np

from spinor.domain.arrays import frozen_array


ETA = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True, eq=False)
class Spinor:
    """Four complex components in the chiral representation, left-handed half first."""

    components: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", frozen_array(self.components, complex, (4,), "spinor"))

    @classmethod
    def coerce(cls, value: SpinorLike) -> Spinor:
        if isinstance(value, Spinor):
            return value
        return cls(np.asarray(value))

    @property
    def left(self) -> np.ndarray:
        return self.components[:2]

    @property
    def right(self) -> np.ndarray:
        return self.components[2:]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))

    def __array__(self, dtype: Any = None, copy: Any = None) -> np.ndarray:
        return np.array(self.components, dtype=dtype)

    def allclose(self, other: SpinorLike, atol: float) -> bool:
        return bool(np.max(np.abs(self.components - Spinor.coerce(other).components)) <= atol)


SpinorLike = Union[Spinor, Sequence[complex], np.ndarray]


def _lower_vector(v: np.ndarray) -> np.ndarray:
    return ETA @ v


def _lower_tensor(t: np.ndarray) -> np.ndarray:
    return ETA @ t @ ETA


@dataclass(frozen=True, eq=False)
class Bilinears:
    """
    Real bilinear quantities of a spinor. Vectors and tensors are stored with
    upper indices; the *_lower properties apply the metric diag(1,-1,-1,-1).
    """

    Theta: float
    Phi: float
    S: np.ndarray
    U: np.ndarray
    Sigma: np.ndarray
    M: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "S", frozen_array(self.S, float, (4,), "S"))
        object.__setattr__(self, "U", frozen_array(self.U, float, (4,), "U"))
        object.__setattr__(self, "Sigma", frozen_array(self.Sigma, float, (4, 4), "Sigma"))
        object.__setattr__(self, "M", frozen_array(self.M, float, (4, 4), "M"))

    @property
    def S_lower(self) -> np.ndarray:
        return _lower_vector(self.S)

    @property
    def U_lower(self) -> np.ndarray:
        return _lower_vector(self.U)

    @property
    def Sigma_lower(self) -> np.ndarray:
        return _lower_tensor(self.Sigma)

    @property
    def M_lower(self) -> np.ndarray:
        return _lower_tensor(self.M)

    def as_dict(self) -> dict[str, Any]:
        return {
            "Theta": self.Theta,
            "Phi": self.Phi,
            "S": self.S.tolist(),
            "U": self.U.tolist(),
            "Sigma": self.Sigma.tolist(),
            "M": self.M.tolist(),
        }


@dataclass(frozen=True)
class FierzReport:
    """Per-identity residuals, each already divided by `scale` = (U⁰)²."""

    residuals: dict[str, float] = field(default_factory=dict)
    scale: float = 1.0

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def failures(self, tol: float) -> list[str]:
        return [name for name, value in self.residuals.items() if value > tol]

    def passed(self, tol: float) -> bool:
        return not self.failures(tol)
