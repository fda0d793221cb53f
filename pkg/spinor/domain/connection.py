from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from django.core.exceptions import ValidationError

from spinor.domain.arrays import finite_float, frozen_array
from spinor.domain.clifford import INDEX_PAIRS


Sampler = Callable[[np.ndarray], np.ndarray]
ScalarSampler = Callable[[np.ndarray], float]

ANTISYMMETRY_TOL = 1e-12


def as_point(x: Sequence[float] | np.ndarray) -> np.ndarray:
    return frozen_array(x, float, (4,), "spacetime point")


def check_antisymmetric(tensor: np.ndarray, name: str) -> None:
    """Raise unless tensor[i, j, ...] == -tensor[j, i, ...] to ANTISYMMETRY_TOL relative."""
    scale = max(1.0, float(np.max(np.abs(tensor))))
    defect = float(np.max(np.abs(tensor + np.swapaxes(tensor, 0, 1))))
    if defect > ANTISYMMETRY_TOL * scale:
        msg = f"{name} is not antisymmetric in its first two indices (defect {defect:.3e})"
        raise ValidationError(msg)


def tensor_from_dense(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """24 components ordered by pair (i<j, INDEX_PAIRS order) then μ → antisymmetric (4, 4, 4) array."""
    dense = frozen_array(values, float, (24,), "dense tensor").reshape(6, 4)
    tensor = np.zeros((4, 4, 4))
    for n, (i, j) in enumerate(INDEX_PAIRS):
        tensor[i, j, :] = dense[n]
        tensor[j, i, :] = -dense[n]
    return tensor


def tensor_to_dense(tensor: np.ndarray) -> np.ndarray:
    return np.concatenate([tensor[i, j, :] for i, j in INDEX_PAIRS])


def tensor_from_entries(entries: Iterable[tuple[int, int, int, float]]) -> np.ndarray:
    """Sparse (i, j, μ, value) entries → antisymmetric array; the (j, i, μ) partner is implied."""
    tensor = np.zeros((4, 4, 4))
    for i, j, mu, value in entries:
        if i == j:
            msg = f"Diagonal entry ({i}, {j}, {mu}) of an antisymmetric tensor must not be set"
            raise ValidationError(msg)
        tensor[i, j, mu] += value
        tensor[j, i, mu] -= value
    return tensor


@dataclass(frozen=True)
class ConnectionField:
    """Tensorial connections sampled pointwise: P_μ(x) and R_{ijμ}(x), all indices down."""

    P: Sampler
    R: Sampler
    description: str = "custom"

    def momentum(self, x: Sequence[float] | np.ndarray) -> np.ndarray:
        return frozen_array(self.P(as_point(x)), float, (4,), "P")

    def tensor(self, x: Sequence[float] | np.ndarray) -> np.ndarray:
        value = frozen_array(self.R(as_point(x)), float, (4, 4, 4), "R")
        check_antisymmetric(value, "R")
        return value

    @classmethod
    def constant(cls, P: Sequence[float] | np.ndarray, R: np.ndarray) -> ConnectionField:
        p = frozen_array(P, float, (4,), "P")
        r = frozen_array(R, float, (4, 4, 4), "R")
        check_antisymmetric(r, "R")
        return cls(P=lambda _x: p, R=lambda _x: r, description="constant")

    @classmethod
    def linear(
        cls,
        P: Sequence[float] | np.ndarray,
        P_gradient: np.ndarray,
        R: np.ndarray,
        R_gradient: np.ndarray,
    ) -> ConnectionField:
        """P_μ(x) = P_μ + G_μν x^ν and R_{ijμ}(x) = R_{ijμ} + H_{ijμν} x^ν."""
        p = frozen_array(P, float, (4,), "P")
        pg = frozen_array(P_gradient, float, (4, 4), "P gradient")
        r = frozen_array(R, float, (4, 4, 4), "R")
        rg = frozen_array(R_gradient, float, (4, 4, 4, 4), "R gradient")
        check_antisymmetric(r, "R")
        check_antisymmetric(rg, "R gradient")
        return cls(P=lambda x: p + pg @ x, R=lambda x: r + rg @ x, description="linear")

    @classmethod
    def zero(cls) -> ConnectionField:
        return cls.constant(np.zeros(4), np.zeros((4, 4, 4)))


@dataclass(frozen=True)
class GaugeData:
    """Spin connection C_{ijμ}, gauge potential A_μ and the frame fields ξ, ξ_{ab} with charge q."""

    C: Sampler
    A: Sampler
    xi: ScalarSampler
    xi_ab: Sampler
    q: float = 0.0
    xi_gradient: Optional[Sampler] = None
    xi_ab_gradient: Optional[Sampler] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", finite_float(self.q, "charge"))

    def spin_connection(self, x: np.ndarray) -> np.ndarray:
        value = frozen_array(self.C(as_point(x)), float, (4, 4, 4), "C")
        check_antisymmetric(value, "C")
        return value

    def potential(self, x: np.ndarray) -> np.ndarray:
        return frozen_array(self.A(as_point(x)), float, (4,), "A")

    @classmethod
    def flat(cls, q: float = 0.0) -> GaugeData:
        return cls(
            C=lambda _x: np.zeros((4, 4, 4)),
            A=lambda _x: np.zeros(4),
            xi=lambda _x: 0.0,
            xi_ab=lambda _x: np.zeros((4, 4)),
            q=q,
            xi_gradient=lambda _x: np.zeros(4),
            xi_ab_gradient=lambda _x: np.zeros((4, 4, 4)),
        )

    @classmethod
    def constant(cls, C: np.ndarray, A: Sequence[float] | np.ndarray, q: float = 0.0) -> GaugeData:
        c = frozen_array(C, float, (4, 4, 4), "C")
        a = frozen_array(A, float, (4,), "A")
        check_antisymmetric(c, "C")
        flat = cls.flat(q)
        return cls(
            C=lambda _x: c,
            A=lambda _x: a,
            xi=flat.xi,
            xi_ab=flat.xi_ab,
            q=q,
            xi_gradient=flat.xi_gradient,
            xi_ab_gradient=flat.xi_ab_gradient,
        )


@dataclass(frozen=True, eq=False)
class ContractionPair:
    """R_μ = R_{μνσ}η^{νσ} and B_μ = ½ε_{μαβγ}R^{αβγ}, both with the index down."""

    R_mu: np.ndarray
    B_mu: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "R_mu", frozen_array(self.R_mu, float, (4,), "R_mu"))
        object.__setattr__(self, "B_mu", frozen_array(self.B_mu, float, (4,), "B_mu"))


@dataclass(frozen=True, eq=False)
class PolarPointData:
    """Inputs of the polar covariant derivative at one point; unused gradients may stay None."""

    P: np.ndarray
    R: np.ndarray
    grad_ln_phi: Optional[np.ndarray] = None
    grad_beta: Optional[np.ndarray] = None
    alpha: Optional[float] = None
    grad_alpha: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "P", frozen_array(self.P, float, (4,), "P"))
        r = frozen_array(self.R, float, (4, 4, 4), "R")
        check_antisymmetric(r, "R")
        object.__setattr__(self, "R", r)
        for name in ("grad_ln_phi", "grad_beta", "grad_alpha"):
            value = getattr(self, name)
            object.__setattr__(self, name, np.zeros(4) if value is None else frozen_array(value, float, (4,), name))
        if self.alpha is not None:
            object.__setattr__(self, "alpha", finite_float(self.alpha, "alpha"))
