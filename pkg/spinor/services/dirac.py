import logging
from typing import Callable, Optional, Sequence

import numpy as np
from django.core.exceptions import ValidationError

from services import FiniteDifferenceService
from spinor.domain import (
    DiracResidual,
    ElkoState,
    GaugeData,
    PolarRegular,
    PolarResiduals,
    RegularPolarField,
    SingularPolarField,
    Spinor,
    SpinorField,
)
from spinor.domain.arrays import finite_float, frozen_array
from spinor.domain.connection import ConnectionField, as_point
from spinor.domain.spinor import SpinorLike
from spinor.services.bilinears import BilinearService
from spinor.services.clifford import ETA, CliffordService
from spinor.services.connection import DEFAULT_FD_STEP, ConnectionService
from spinor.services.polar import PolarService


logger = logging.getLogger(__name__)

NORMALIZATION_TOL = 1e-8
# |sin α| or |cos α| at or below this routes the singular system to its flagpole or dipole reduction.
ROUTING_TOL = 1e-9
SINGULAR_SYSTEMS = ("general", "flagpole", "dipole")

ELKO_KEYS = ("S+", "A+", "S-", "A-")


class DiracService:
    """Dirac residuals in component and polar form, discrete C and M maps, and Elko states."""

    @staticmethod
    def dirac_operator(covariant: np.ndarray, psi: np.ndarray, m: float) -> np.ndarray:
        """iγ^μ∇_μψ − mψ from the stack ∇_μψ (μ first)."""
        gamma = CliffordService.build_gamma_basis().gamma
        return 1j * np.einsum("mab,mb->a", gamma, covariant) - m * psi

    @staticmethod
    def covariant_derivative(
        field: SpinorField,
        x: Sequence[float] | np.ndarray,
        gauge: Optional[GaugeData] = None,
        q: Optional[float] = None,
        h: float = DEFAULT_FD_STEP,
        order: int = 4,
    ) -> np.ndarray:
        """∂_μψ + ½C_{ijμ}σ^{ij}ψ + iqA_μψ, μ first."""
        point = as_point(x)
        psi = field.at(point)
        covariant = np.array(field.derivative(point, h, order))
        if gauge is not None:
            charge = gauge.q if q is None else finite_float(q, "charge")
            covariant += ConnectionService.rotation_term(gauge.spin_connection(point)) @ psi
            covariant += 1j * charge * np.outer(gauge.potential(point), psi)
        return covariant

    @classmethod
    def dirac_residual(
        cls,
        field: SpinorField,
        x: Sequence[float] | np.ndarray,
        m: float,
        q: Optional[float] = None,
        gauge: Optional[GaugeData] = None,
        h: float = DEFAULT_FD_STEP,
        order: int = 4,
    ) -> DiracResidual:
        """Component-form residual; derivatives are finite differences unless the field carries a gradient."""
        point = as_point(x)
        psi = field.at(point)
        covariant = cls.covariant_derivative(field, point, gauge, q, h, order)
        return DiracResidual.of(cls.dirac_operator(covariant, psi, m), psi)

    @classmethod
    def polar_residual(cls, psi: SpinorLike, matrices: np.ndarray, m: float) -> DiracResidual:
        """Residual with ∇_μψ = Ω_μψ taken from polar derivative matrices."""
        v = Spinor.coerce(psi).components
        omega = frozen_array(matrices, complex, (4, 4, 4), "derivative matrices")
        return DiracResidual.of(cls.dirac_operator(omega @ v, v, m), v)

    @staticmethod
    def flagpole_dirac_matrix(R_mu: Sequence[float] | np.ndarray, B_mu: Sequence[float] | np.ndarray, m: float) -> np.ndarray:
        """iR_aγ^a + B_aγ^aπ − 2m𝕀 with lower-index R_a and B_a."""
        basis = CliffordService.build_gamma_basis()
        r = frozen_array(R_mu, float, (4,), "R_mu")
        b = frozen_array(B_mu, float, (4,), "B_mu")
        slash_r = np.einsum("a,aij->ij", r, basis.gamma)
        slash_b = np.einsum("a,aij->ij", b, basis.gamma)
        return 1j * slash_r + slash_b @ basis.pi - 2.0 * finite_float(m, "mass") * np.eye(4, dtype=complex)

    @staticmethod
    def apply_C(psi: SpinorLike) -> Spinor:
        """iγ²ψ*, with no extra phase."""
        basis = CliffordService.build_gamma_basis()
        return Spinor(1j * basis.gamma2 @ Spinor.coerce(psi).components.conj())

    @staticmethod
    def apply_M(psi: SpinorLike) -> Spinor:
        """πψ; pair with m → −m."""
        basis = CliffordService.build_gamma_basis()
        return Spinor(basis.pi @ Spinor.coerce(psi).components)

    @staticmethod
    def _scalar_gradient(
        func: Callable[[np.ndarray], float],
        gradient: Optional[Callable[[np.ndarray], np.ndarray]],
        x: np.ndarray,
        h: float,
        order: int,
    ) -> np.ndarray:
        if gradient is not None:
            return frozen_array(gradient(x), float, (4,), "gradient")
        return FiniteDifferenceService.gradient(lambda y: np.asarray(float(func(y))), x, h, order)

    @classmethod
    def regular_polar_residuals(
        cls,
        field: RegularPolarField,
        conn: ConnectionField,
        m: float,
        x: Sequence[float] | np.ndarray,
        h: float = DEFAULT_FD_STEP,
        order: int = 4,
    ) -> PolarResiduals:
        """
        eq_beta = ∇_μβ + B_μ − 2P^ι(u_ιs_μ − u_μs_ι) + 2ms_μcosβ
        eq_phi  = ∇_μ ln φ² + R_μ − 2P^ρu^νs^αε_{μρνα} + 2ms_μ sinβ
        """
        point = as_point(x)
        eps = CliffordService.build_gamma_basis().epsilon
        u = frozen_array(field.u(point), float, (4,), "u")
        s = frozen_array(field.s(point), float, (4,), "s")
        u_low, s_low = ETA @ u, ETA @ s
        defects = {"u.u - 1": u @ u_low - 1.0, "s.s + 1": s @ s_low + 1.0, "u.s": u @ s_low}
        bad = {k: float(v) for k, v in defects.items() if abs(v) > NORMALIZATION_TOL}
        if bad:
            msg = f"Polar frame vectors are not normalized at {point.tolist()}: {bad}"
            raise ValidationError(msg)

        beta = finite_float(field.beta(point), "beta")
        phi = finite_float(field.phi(point), "phi")
        if phi <= 0:
            msg = f"Polar module must be positive, got {phi}"
            raise ValidationError(msg)
        grad_beta = cls._scalar_gradient(field.beta, field.beta_gradient, point, h, order)
        grad_ln_phi2 = 2.0 * cls._scalar_gradient(field.phi, field.phi_gradient, point, h, order) / phi

        p_low = conn.momentum(point)
        p_up = ETA @ p_low
        pair = ConnectionService.contract_R(conn.tensor(point))

        eq_beta = (
            grad_beta
            + pair.B_mu
            - 2.0 * ((p_up @ u_low) * s_low - (p_up @ s_low) * u_low)
            + 2.0 * m * s_low * np.cos(beta)
        )
        eq_phi = (
            grad_ln_phi2
            + pair.R_mu
            - 2.0 * np.einsum("r,n,a,mrna->m", p_up, u, s, eps)
            + 2.0 * m * s_low * np.sin(beta)
        )
        return PolarResiduals(system="regular", components={"eq_beta": eq_beta, "eq_phi": eq_phi})

    @staticmethod
    def route_singular(alpha: float) -> str:
        if abs(np.sin(alpha)) <= ROUTING_TOL:
            return "flagpole"
        if abs(np.cos(alpha)) <= ROUTING_TOL:
            return "dipole"
        return "general"

    @classmethod
    def singular_polar_residuals(
        cls,
        field: SingularPolarField,
        conn: ConnectionField,
        m: float,
        x: Sequence[float] | np.ndarray,
        system: Optional[str] = None,
        h: float = DEFAULT_FD_STEP,
        order: int = 4,
    ) -> PolarResiduals:
        """Left sides of the singular system; α ≈ 0 or π routes to the flagpole reduction, α ≈ ±π/2 to the dipole one."""
        point = as_point(x)
        basis = CliffordService.build_gamma_basis()
        alpha = finite_float(field.alpha(point), "alpha")
        chosen = system or cls.route_singular(alpha)
        if chosen not in SINGULAR_SYSTEMS:
            msg = f"Unknown singular system {chosen!r}; expected one of {SINGULAR_SYSTEMS}"
            raise ValidationError(msg)

        u_up = frozen_array(field.U(point), float, (4,), "U")
        m_up = frozen_array(field.M(point), float, (4, 4), "M")
        u_low, m_low = ETA @ u_up, ETA @ m_up @ ETA
        p_low = conn.momentum(point)
        pair = ConnectionService.contract_R(conn.tensor(point))
        r_low, b_low = pair.R_mu, pair.B_mu
        r_up, b_up = ETA @ r_low, ETA @ b_low
        eps_low, eps_up = basis.epsilon, basis.epsilon_upper
        wedge_ur = np.outer(u_up, r_up) - np.outer(r_up, u_up)

        if chosen == "flagpole":
            tensor = -np.einsum("m,mran,r->an", b_low, eps_up, u_low) + wedge_ur + 2.0 * m * m_up
            components = {
                "R_dot_U": np.asarray(r_low @ u_up),
                "B_dot_U": np.asarray(b_low @ u_up),
                "tensor": tensor,
            }
            return PolarResiduals(system="flagpole", components=components)

        if chosen == "dipole":
            if m != 0.0:
                msg = f"Dipole dynamics is massless; got m = {m}"
                raise ValidationError(msg)
            # Upper sign for the left-handed case, where S = -U and sin(alpha) = +1.
            sign = 1.0 if np.sin(alpha) > 0 else -1.0
            k_low = -b_low + 2.0 * sign * p_low
            tensor = np.einsum("m,mran,r->an", k_low, eps_up, u_low) + wedge_ur
            components = {
                "R_dot_U": np.asarray(r_low @ u_up),
                "K_dot_U": np.asarray(k_low @ u_up),
                "tensor": tensor,
            }
            return PolarResiduals(system="dipole", components=components)

        cosine = np.cos(alpha)
        if abs(cosine) < ROUTING_TOL:
            msg = "sec(alpha) diverges: the general singular system needs cos(alpha) != 0"
            raise ValidationError(msg)
        secant, tangent = 1.0 / cosine, np.tan(alpha)
        grad_alpha = cls._scalar_gradient(field.alpha, field.alpha_gradient, point, h, order)

        torsion = (
            -np.einsum("s,smrn->mrn", b_up, eps_low)
            + np.einsum("m,rn->mrn", r_low, ETA)
            - np.einsum("r,mn->mrn", r_low, ETA)
            + tangent * (np.einsum("mn,r->mrn", ETA, grad_alpha) - np.einsum("rn,m->mrn", ETA, grad_alpha))
        )
        dual_m = np.einsum("mrhz,hz->mr", eps_up, m_low)
        p_m = np.einsum("a,an->n", p_low, m_up)

        eq1 = secant * np.einsum("mrsn,m,rs->n", eps_up, grad_alpha, m_low) - 4.0 * p_m
        eq2 = np.einsum("mrn,mr->n", torsion, dual_m)
        eq3 = (
            2.0 * secant * (m_up @ grad_alpha)
            - 2.0 * np.einsum("m,mrsn,rs->n", p_low, eps_up, m_low)
            + 4.0 * m * np.sin(alpha) * u_up
        )
        eq4 = np.einsum("mrn,mr->n", torsion, m_up) + 4.0 * m * u_low
        logger.debug("Singular system evaluated at %s", point.tolist())
        return PolarResiduals(system="general", components={"eq1": eq1, "eq2": eq2, "eq3": eq3, "eq4": eq4})

    @staticmethod
    def elko_states(chi: float = 1.0, omega: float = 0.0) -> tuple[ElkoState, ...]:
        """λ^S_+, λ^A_+, λ^S_−, λ^A_− in that order; chi = 1, omega = 0 gives the trivialized columns."""
        amplitude = finite_float(chi, "chi")
        if amplitude <= 0:
            msg = f"Elko amplitude chi must be positive, got {amplitude}"
            raise ValidationError(msg)
        down, up = np.exp(-1j * omega), np.exp(1j * omega)
        columns = {
            "S+": [0.0, -down, up, 0.0],
            "A+": [0.0, down, up, 0.0],
            "S-": [down, 0.0, 0.0, up],
            "A-": [-down, 0.0, 0.0, up],
        }
        return tuple(
            ElkoState(
                chi=amplitude,
                omega=omega,
                conjugacy=key[0],
                helicity=key[1],
                components=amplitude * np.array(columns[key], dtype=complex),
            )
            for key in ELKO_KEYS
        )

    @staticmethod
    def boost_states(states: Sequence[ElkoState], matrix: np.ndarray) -> tuple[ElkoState, ...]:
        return tuple(state.transformed(matrix) for state in states)

    @staticmethod
    def kinematic_residuals(states: Sequence[ElkoState], p: Sequence[float] | np.ndarray, m: float) -> dict[str, float]:
        """
        Norms of γ_μp^μλ^S_+ + mλ^A_−, γ_μp^μλ^S_− − mλ^A_+, γ_μp^μλ^A_+ − mλ^S_− and
        γ_μp^μλ^A_− + mλ^S_+ for an upper-index momentum p.
        """
        basis = CliffordService.build_gamma_basis()
        by_key = {state.key: state.components for state in states}
        missing = set(ELKO_KEYS) - set(by_key)
        if missing:
            msg = f"Missing Elko states: {sorted(missing)}"
            raise ValidationError(msg)
        slash_p = np.einsum("a,aij->ij", ETA @ frozen_array(p, float, (4,), "momentum"), basis.gamma)
        relations = {
            "S+|A-": slash_p @ by_key["S+"] + m * by_key["A-"],
            "S-|A+": slash_p @ by_key["S-"] - m * by_key["A+"],
            "A+|S-": slash_p @ by_key["A+"] - m * by_key["S-"],
            "A-|S+": slash_p @ by_key["A-"] + m * by_key["S+"],
        }
        return {name: float(np.linalg.norm(value)) for name, value in relations.items()}

    @staticmethod
    def regular_polar_field(field: SpinorField, tol: float = 1e-9) -> RegularPolarField:
        """Pointwise regular decomposition of a spinor field."""

        def decompose(x: np.ndarray) -> PolarRegular:
            return PolarService.decompose_regular(field.at(x), tol)

        return RegularPolarField(
            beta=lambda x: decompose(x).beta,
            phi=lambda x: decompose(x).phi,
            u=lambda x: decompose(x).u,
            s=lambda x: decompose(x).s,
        )

    @staticmethod
    def singular_polar_field(field: SpinorField) -> SingularPolarField:
        """Pointwise α = arcsin(−S⁰/U⁰), U and M of a spinor field."""

        def alpha(x: np.ndarray) -> float:
            b = BilinearService.compute_bilinears(field.at(x))
            return float(np.arcsin(np.clip(-b.S[0] / b.U[0], -1.0, 1.0)))

        return SingularPolarField(
            alpha=alpha,
            U=lambda x: BilinearService.compute_bilinears(field.at(x)).U,
            M=lambda x: BilinearService.compute_bilinears(field.at(x)).M,
        )
