import logging
from typing import Sequence

import numpy as np
from django.core.exceptions import ValidationError

from services import FiniteDifferenceService
from spinor.domain import ChiralSplit, ConnectionField, ExpansionResult, Path, Spinor, SpinorField
from spinor.domain.arrays import frozen_array
from spinor.domain.connection import as_point
from spinor.domain.spinor import SpinorLike
from spinor.services.clifford import CliffordService
from spinor.services.connection import DEFAULT_FD_STEP, ConnectionService


logger = logging.getLogger(__name__)


class PlaneWaveService:
    """Doubly-chiral plane-wave expansion as a path-ordered product along straight segments."""

    @staticmethod
    def generator(conn: ConnectionField, x: Sequence[float] | np.ndarray, direction: Sequence[float] | np.ndarray) -> np.ndarray:
        """(iP_μ𝕀 + ½σ^{ij}R_{ijμ})v^μ at x."""
        v = frozen_array(direction, float, (4,), "direction")
        point = as_point(x)
        rotation = ConnectionService.rotation_term(conn.tensor(point))
        return 1j * float(conn.momentum(point) @ v) * np.eye(4, dtype=complex) + np.einsum("m,mab->ab", v, rotation)

    @classmethod
    def transport(cls, path: Path, conn: ConnectionField) -> np.ndarray:
        """Left-ordered product of exp(−G(x_k)Δx) over the step midpoints x_k."""
        delta = path.displacement / path.steps
        total = np.eye(4, dtype=complex)
        for midpoint in path.step_midpoints():
            total = CliffordService.matrix_exponential(-cls.generator(conn, midpoint, delta)) @ total
        return total

    @classmethod
    def expand(cls, psi0: SpinorLike, path: Path, conn: ConnectionField) -> ExpansionResult:
        transport = cls.transport(path, conn)
        spinor = Spinor(transport @ Spinor.coerce(psi0).components)
        logger.debug("Expanded along %s -> %s in %d steps", path.start.tolist(), path.end.tolist(), path.steps)
        return ExpansionResult(spinor=spinor, step_count=path.steps, transport=transport)

    @staticmethod
    def chiral_split(psi: SpinorLike) -> ChiralSplit:
        """Projection onto the π eigenspaces: (𝕀 − π)/2 gives the left part, (𝕀 + π)/2 the right."""
        basis = CliffordService.build_gamma_basis()
        v = Spinor.coerce(psi).components
        identity = np.eye(4, dtype=complex)
        left = 0.5 * (identity - basis.pi) @ v
        right = 0.5 * (identity + basis.pi) @ v
        return ChiralSplit(left=left[:2], right=right[2:])

    @classmethod
    def as_field(
        cls,
        psi0: SpinorLike,
        conn: ConnectionField,
        origin: Sequence[float] | np.ndarray = (0.0, 0.0, 0.0, 0.0),
        steps: int = 1,
    ) -> SpinorField:
        """Spinor field x → expansion of psi0 along the straight path origin → x."""
        start = as_point(origin)
        seed = Spinor.coerce(psi0)

        def value(x: np.ndarray) -> np.ndarray:
            return cls.expand(seed, Path(start=start, end=x, steps=steps), conn).spinor.components

        return SpinorField(value=value, description="expansion")

    @classmethod
    def verify_expansion(
        cls,
        psi0: SpinorLike,
        path: Path,
        conn: ConnectionField,
        h: float = DEFAULT_FD_STEP,
    ) -> float:
        """
        Max-norm gap between the central difference of the expanded field along the path
        direction at the midpoint and −(iP_μ + ½σ^{ij}R_{ijμ})v^μψ there.
        """
        FiniteDifferenceService.validate_step(h)
        length = float(np.linalg.norm(path.displacement))
        if length == 0.0:
            msg = "Path has zero length; no interior point to verify"
            raise ValidationError(msg)
        direction = path.displacement / length
        seed = Spinor.coerce(psi0)

        def expanded(x: np.ndarray) -> np.ndarray:
            return cls.expand(seed, path.with_end(x), conn).spinor.components

        midpoint = path.midpoint
        numeric = FiniteDifferenceService.directional(expanded, midpoint, direction, h, order=2)
        analytic = -cls.generator(conn, midpoint, direction) @ expanded(midpoint)
        residual = float(np.max(np.abs(numeric - analytic)))
        logger.debug("Expansion derivative residual %.3e at h=%.1e", residual, h)
        return residual
