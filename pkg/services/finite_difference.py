from __future__ import annotations

from typing import Callable

import numpy as np
from django.core.exceptions import ValidationError


# Central-difference weights keyed by order: offsets in units of h, weights.
_STENCILS: dict[int, tuple[tuple[float, ...], tuple[float, ...]]] = {
    2: ((-1.0, 1.0), (-0.5, 0.5)),
    4: ((-2.0, -1.0, 1.0, 2.0), (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)),
}


class FiniteDifferenceService:
    """Central finite differences of array-valued functions on spacetime points."""

    @staticmethod
    def validate_step(h: float) -> None:
        if not np.isfinite(h) or h <= 0:
            msg = f"Finite-difference step must be a positive finite number, got {h}"
            raise ValidationError(msg)

    @classmethod
    def directional(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        x: np.ndarray,
        direction: np.ndarray,
        h: float,
        order: int = 2,
    ) -> np.ndarray:
        """Derivative of func at x along direction (not normalized)."""
        cls.validate_step(h)
        if order not in _STENCILS:
            msg = f"Unsupported finite-difference order {order}; expected one of {sorted(_STENCILS)}"
            raise ValidationError(msg)
        offsets, weights = _STENCILS[order]
        x = np.asarray(x, dtype=float)
        direction = np.asarray(direction, dtype=float)
        total = sum(w * np.asarray(func(x + o * h * direction)) for o, w in zip(offsets, weights))
        return np.asarray(total) / h

    @classmethod
    def gradient(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        x: np.ndarray,
        h: float,
        order: int = 2,
    ) -> np.ndarray:
        """Stack of ∂_μ func at x for μ = 0..3; the leading axis is μ."""
        basis = np.eye(4)
        return np.stack([cls.directional(func, x, basis[mu], h, order) for mu in range(4)])

    @staticmethod
    def convergence_ratio(coarse_error: float, fine_error: float) -> float:
        """Ratio of errors at h and h/2; about 4 for a second-order scheme."""
        if fine_error == 0.0:
            return float("inf")
        return coarse_error / fine_error
