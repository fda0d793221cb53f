import logging
from typing import Iterable, Sequence

import numpy as np
from django.core.exceptions import ValidationError

from services import FiniteDifferenceService
from spinor.domain import ConnectionField, ContractionPair, GaugeData, LounestoClass, LounestoLabel, PolarPointData
from spinor.domain.connection import as_point, check_antisymmetric, tensor_from_dense, tensor_from_entries
from spinor.services.clifford import ETA, CliffordService


logger = logging.getLogger(__name__)

DEFAULT_FD_STEP = 1e-4
# |cos α| below this is treated as the dipole limit of the singular derivative.
DIPOLE_LIMIT_TOL = 1e-12
FLAGPOLE_P_TOL = 1e-12


class ConnectionService:
    """Tensorial connections P_μ, R_{ijμ}: construction, contractions and polar derivative matrices."""

    @staticmethod
    def tensor_from_dense(values: Sequence[float] | np.ndarray) -> np.ndarray:
        return tensor_from_dense(values)

    @staticmethod
    def tensor_from_entries(entries: Iterable[tuple[int, int, int, float]]) -> np.ndarray:
        return tensor_from_entries(entries)

    @staticmethod
    def build_tensorial(g: GaugeData, derivative_step: float = DEFAULT_FD_STEP) -> ConnectionField:
        """P_μ = q(∂_μξ − A_μ) and R_{ijμ} = ∂_μξ_{ij} − C_{ijμ}; exact gradients are used when supplied."""
        FiniteDifferenceService.validate_step(derivative_step)

        def scalar(x: np.ndarray) -> np.ndarray:
            value = float(g.xi(x))
            if not np.isfinite(value):
                msg = f"xi sampler returned a non-finite value at {x}"
                raise ValidationError(msg)
            return np.asarray(value)

        def xi_ab(x: np.ndarray) -> np.ndarray:
            value = np.asarray(g.xi_ab(x), dtype=float)
            if value.shape != (4, 4) or not np.all(np.isfinite(value)):
                msg = f"xi_ab sampler must return a finite 4x4 array at {x}"
                raise ValidationError(msg)
            check_antisymmetric(value, "xi_ab")
            return value

        def momentum(x: np.ndarray) -> np.ndarray:
            if g.xi_gradient is not None:
                d_xi = np.asarray(g.xi_gradient(x), dtype=float)
            else:
                d_xi = FiniteDifferenceService.gradient(scalar, x, derivative_step)
            return g.q * (d_xi - g.potential(x))

        def tensor(x: np.ndarray) -> np.ndarray:
            if g.xi_ab_gradient is not None:
                d_xi_ab = np.asarray(g.xi_ab_gradient(x), dtype=float)
            else:
                # gradient() stacks μ first; R keeps μ last.
                d_xi_ab = np.moveaxis(FiniteDifferenceService.gradient(xi_ab, x, derivative_step), 0, -1)
            return d_xi_ab - g.spin_connection(x)

        return ConnectionField(P=momentum, R=tensor, description="tensorial")

    @staticmethod
    def contract_R(R: np.ndarray) -> ContractionPair:
        """R_μ = R_{μνσ}η^{νσ} and B_μ = ½ε_{μαβγ}R^{αβγ}."""
        r = np.asarray(R, dtype=float)
        check_antisymmetric(r, "R")
        basis = CliffordService.build_gamma_basis()
        r_mu = np.einsum("ijk,jk->i", r, ETA)
        r_up = np.einsum("ai,bj,ck,ijk->abc", ETA, ETA, ETA, r)
        b_mu = 0.5 * np.einsum("mabc,abc->m", basis.epsilon, r_up)
        return ContractionPair(R_mu=r_mu, B_mu=b_mu)

    @staticmethod
    def rotation_term(R: np.ndarray) -> np.ndarray:
        """½R_{ijμ}σ^{ij} for each μ, shape (4, 4, 4) with μ first."""
        sigma = CliffordService.build_gamma_basis().sigma
        return 0.5 * np.einsum("ijm,ijab->mab", np.asarray(R, dtype=float), sigma)

    @classmethod
    def polar_derivative_matrix(cls, klass: LounestoClass | LounestoLabel, data: PolarPointData) -> np.ndarray:
        """Matrices Ω_μ with ∇_μψ = Ω_μψ for the polar form of the given class."""
        label = klass.label if isinstance(klass, LounestoClass) else LounestoLabel(klass)
        basis = CliffordService.build_gamma_basis()
        identity = np.eye(4, dtype=complex)
        matrices = -cls.rotation_term(data.R).astype(complex)

        if label.is_regular:
            matrices += np.einsum("m,ab->mab", -0.5j * data.grad_beta, basis.pi)
            matrices += np.einsum("m,ab->mab", data.grad_ln_phi - 1j * data.P, identity)
        elif label is LounestoLabel.FLAG_DIPOLE:
            if data.alpha is None:
                msg = "Flag-dipole derivative matrix needs the value of alpha"
                raise ValidationError(msg)
            cosine = np.cos(data.alpha)
            if abs(cosine) < DIPOLE_LIMIT_TOL:
                msg = "cos(alpha) vanishes: the flag-dipole formula is singular, use the dipole form"
                raise ValidationError(msg)
            tangent, secant = np.tan(data.alpha), 1.0 / cosine
            matrices += np.einsum("m,ab->mab", -0.5 * tangent * data.grad_alpha - 1j * data.P, identity)
            matrices += np.einsum("m,ab->mab", -0.5 * secant * data.grad_alpha, basis.pi)
        elif label is LounestoLabel.DIPOLE:
            matrices += np.einsum("m,ab->mab", -1j * data.P, identity)
        else:
            if np.max(np.abs(data.P)) > FLAGPOLE_P_TOL:
                msg = f"Flagpole spinors carry no gauge momentum; got P = {data.P.tolist()}"
                raise ValidationError(msg)
        return matrices

    @staticmethod
    def point_data(conn: ConnectionField, x: Sequence[float] | np.ndarray, **gradients: object) -> PolarPointData:
        point = as_point(x)
        return PolarPointData(P=conn.momentum(point), R=conn.tensor(point), **gradients)  # type: ignore[arg-type]
