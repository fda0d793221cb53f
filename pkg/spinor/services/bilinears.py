import logging

import numpy as np

from spinor.domain import Bilinears, FierzReport, Spinor
from spinor.domain.spinor import SpinorLike
from spinor.exceptions import InconsistencyError
from spinor.services.clifford import ETA, CliffordService


logger = logging.getLogger(__name__)

REALITY_TOL = 1e-12

FIERZ_IDENTITIES = (
    "i_M_U",
    "ii_Sigma_U",
    "iii_M_S",
    "iv_Sigma_S",
    "v_dual",
    "vi_wedge",
    "vii_squares",
    "viii_mixed",
    "ix_norms",
    "x_orthogonal",
)


class BilinearService:
    """Bilinear covariants of a single spinor and the Fierz rearrangement suite."""

    @staticmethod
    def compute_bilinears(psi: SpinorLike) -> Bilinears:
        basis = CliffordService.build_gamma_basis()
        v = Spinor.coerce(psi).components
        bar = v.conj() @ basis.gamma0

        phi = bar @ v
        theta = 1j * (bar @ basis.pi @ v)
        u = np.einsum("i,aij,j->a", bar, basis.gamma, v)
        s = np.einsum("i,aij,jk,k->a", bar, basis.gamma, basis.pi, v)
        sigma = 2.0 * np.einsum("i,abij,jk,k->ab", bar, basis.sigma, basis.pi, v)
        m = 2j * np.einsum("i,abij,j->ab", bar, basis.sigma, v)

        residue = max(
            abs(phi.imag),
            abs(theta.imag),
            float(np.max(np.abs(u.imag))),
            float(np.max(np.abs(s.imag))),
            float(np.max(np.abs(sigma.imag))),
            float(np.max(np.abs(m.imag))),
        )
        if residue > REALITY_TOL * (abs(u[0].real) + 1.0):
            msg = f"Bilinears have an imaginary residue of {residue:.3e}; the gamma basis is inconsistent"
            raise InconsistencyError(msg)

        sigma_r = sigma.real
        m_r = m.real
        return Bilinears(
            Theta=float(theta.real),
            Phi=float(phi.real),
            S=s.real,
            U=u.real,
            Sigma=(sigma_r - sigma_r.T) / 2.0,
            M=(m_r - m_r.T) / 2.0,
        )

    @staticmethod
    def wedge(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """a_[i b_j] as a_i b_j - a_j b_i, without a one-half factor."""
        return np.outer(a, b) - np.outer(b, a)

    @staticmethod
    def fierz_check(b: Bilinears) -> FierzReport:
        """Max-norm residual of each of the ten identities, divided by (U⁰)²."""
        eps = CliffordService.build_gamma_basis().epsilon
        theta, phi = b.Theta, b.Phi
        u, s = b.U, b.S
        u_low, s_low = b.U_lower, b.S_lower
        m_low, sigma_low = b.M_lower, b.Sigma_lower
        m_up, sigma_up = b.M, b.Sigma
        dual = np.einsum("j,k,jkab->ab", u, s, eps)
        invariant = phi**2 - theta**2
        norm = theta**2 + phi**2

        def worst(*parts: np.ndarray | float) -> float:
            return max(float(np.max(np.abs(p))) for p in parts)

        raw = {
            "i_M_U": worst(np.einsum("ik,i->k", m_low, u) - theta * s_low),
            "ii_Sigma_U": worst(np.einsum("ik,i->k", sigma_low, u) - phi * s_low),
            "iii_M_S": worst(np.einsum("ik,i->k", m_low, s) - theta * u_low),
            "iv_Sigma_S": worst(np.einsum("ik,i->k", sigma_low, s) - phi * u_low),
            "v_dual": worst(m_low * phi - sigma_low * theta - dual),
            "vi_wedge": worst(m_low * theta + sigma_low * phi - BilinearService.wedge(u_low, s_low)),
            "vii_squares": worst(
                0.5 * np.sum(m_low * m_up) - invariant,
                -0.5 * np.sum(sigma_low * sigma_up) - invariant,
            ),
            "viii_mixed": worst(0.5 * np.sum(m_low * sigma_up) + 2.0 * theta * phi),
            "ix_norms": worst(u @ u_low - norm, -(s @ s_low) - norm),
            "x_orthogonal": worst(u @ s_low),
        }
        scale = float(u[0]) ** 2 if u[0] > 0 else 1.0
        residuals = {name: raw[name] / scale for name in FIERZ_IDENTITIES}
        logger.debug("Fierz residuals: max %.3e", max(residuals.values()))
        return FierzReport(residuals=residuals, scale=scale)

    @classmethod
    def regular_tensor_closed_forms(
        cls, phi: float, beta: float, u: np.ndarray, s: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """Σ_ab and M_ab (indices down) of a regular spinor from its polar variables."""
        eps = CliffordService.build_gamma_basis().epsilon
        rho = 2.0 * phi**2
        u_low, s_low = ETA @ u, ETA @ s
        dual = np.einsum("j,k,jkab->ab", u, s, eps)
        wedge = cls.wedge(u_low, s_low)
        sigma = rho * (np.cos(beta) * wedge - np.sin(beta) * dual)
        m = rho * (np.cos(beta) * dual + np.sin(beta) * wedge)
        return sigma, m
