from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from spinor.domain.arrays import finite_float, frozen_array


# Pair order for the six independent Lorentz parameters θ_ab and for the
# 24-component dense layout of R_{ijμ}: (01), (02), (03), (12), (13), (23).
INDEX_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True, eq=False)
class GammaBasis:
    """Chiral-representation Clifford basis with upper-index gammas and sigmas."""

    gamma: np.ndarray
    pi: np.ndarray
    sigma: np.ndarray
    eta: np.ndarray
    epsilon: np.ndarray
    calibration: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "gamma", frozen_array(self.gamma, complex, (4, 4, 4), "gamma"))
        object.__setattr__(self, "pi", frozen_array(self.pi, complex, (4, 4), "pi"))
        object.__setattr__(self, "sigma", frozen_array(self.sigma, complex, (4, 4, 4, 4), "sigma"))
        object.__setattr__(self, "eta", frozen_array(self.eta, float, (4, 4), "eta"))
        object.__setattr__(self, "epsilon", frozen_array(self.epsilon, float, (4, 4, 4, 4), "epsilon"))

    @property
    def gamma0(self) -> np.ndarray:
        return self.gamma[0]

    @property
    def gamma1(self) -> np.ndarray:
        return self.gamma[1]

    @property
    def gamma2(self) -> np.ndarray:
        return self.gamma[2]

    @property
    def gamma3(self) -> np.ndarray:
        return self.gamma[3]

    @property
    def gamma_lower(self) -> np.ndarray:
        return np.einsum("ab,bij->aij", self.eta, self.gamma)

    @property
    def sigma_lower(self) -> np.ndarray:
        return np.einsum("ac,bd,cdij->abij", self.eta, self.eta, self.sigma)

    @property
    def epsilon_upper(self) -> np.ndarray:
        # With a diagonal metric of determinant -1, raising all four indices flips the sign.
        return -self.epsilon


@dataclass(frozen=True, eq=False)
class SpinorTransformation:
    """S = exp(½θ_abσ^ab + iqθ𝕀); `params` holds θ_ab in INDEX_PAIRS order."""

    matrix: np.ndarray
    params: np.ndarray
    theta: float = 0.0
    q: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", frozen_array(self.matrix, complex, (4, 4), "transformation matrix"))
        object.__setattr__(self, "params", frozen_array(self.params, float, (6,), "Lorentz parameters"))
        object.__setattr__(self, "theta", finite_float(self.theta, "gauge parameter"))
        object.__setattr__(self, "q", finite_float(self.q, "charge"))

    def inverse(self) -> SpinorTransformation:
        """exp(-G) with the same charge; the matrix is γ⁰S†γ⁰, exact for real parameters."""
        m = self.matrix.conj().T
        swapped = np.block([[m[2:, 2:], m[2:, :2]], [m[:2, 2:], m[:2, :2]]])
        return SpinorTransformation(matrix=swapped, params=-self.params, theta=-self.theta, q=self.q)

    def apply(self, components: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(components, dtype=complex)
