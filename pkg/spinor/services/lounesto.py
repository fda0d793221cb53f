import logging

import numpy as np
from django.core.exceptions import ValidationError

from spinor.domain import LounestoClass, LounestoLabel, Spinor
from spinor.domain.spinor import SpinorLike
from spinor.exceptions import InconsistencyError
from spinor.services.bilinears import BilinearService


logger = logging.getLogger(__name__)

DEFAULT_TOL_CLASS = 1e-9


class LounestoService:
    """Lounesto classification from U⁰-normalized bilinear magnitudes."""

    @staticmethod
    def magnitudes(psi: SpinorLike, tol: float = DEFAULT_TOL_CLASS) -> dict[str, float]:
        b = BilinearService.compute_bilinears(psi)
        u0 = float(b.U[0])
        if u0 <= tol:
            msg = f"Cannot classify a zero spinor (U0 = {u0:.3e} <= {tol:.1e})"
            raise ValidationError(msg)
        return {
            "Phi": abs(b.Phi) / u0,
            "Theta": abs(b.Theta) / u0,
            "S": float(np.max(np.abs(b.S))) / u0,
            "M": float(np.max(np.abs(b.M))) / u0,
        }

    @classmethod
    def classify(cls, psi: SpinorLike, tol: float = DEFAULT_TOL_CLASS) -> LounestoClass:
        spinor = Spinor.coerce(psi)
        mags = cls.magnitudes(spinor, tol)
        phi_zero = mags["Phi"] <= tol
        theta_zero = mags["Theta"] <= tol

        if not phi_zero and not theta_zero:
            label = LounestoLabel.REGULAR_PHI_THETA
        elif not phi_zero:
            label = LounestoLabel.REGULAR_PHI
        elif not theta_zero:
            label = LounestoLabel.REGULAR_THETA
        else:
            s_zero = mags["S"] <= tol
            m_zero = mags["M"] <= tol
            if s_zero and m_zero:
                msg = f"Spinor {spinor.components} has vanishing S and M with nonzero U; bilinears are inconsistent"
                raise InconsistencyError(msg)
            if s_zero:
                label = LounestoLabel.FLAGPOLE
            elif m_zero:
                label = LounestoLabel.DIPOLE
            else:
                label = LounestoLabel.FLAG_DIPOLE

        logger.debug("Classified spinor as %s (tolerance %.1e)", label.value, tol)
        return LounestoClass(label=label, tolerance_used=tol, magnitudes=mags)
