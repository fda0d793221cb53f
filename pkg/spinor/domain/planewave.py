from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from django.core.exceptions import ValidationError

from spinor.domain.arrays import frozen_array
from spinor.domain.spinor import Spinor


LEFT_ORDERED = "left-ordered product"


@dataclass(frozen=True, eq=False)
class Path:
    """Straight segment x(t) = start + t(end - start), t in [0, 1], cut into `steps` equal pieces."""

    start: np.ndarray
    end: np.ndarray
    steps: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", frozen_array(self.start, float, (4,), "path start"))
        object.__setattr__(self, "end", frozen_array(self.end, float, (4,), "path end"))
        if isinstance(self.steps, bool) or int(self.steps) != self.steps or self.steps < 1:
            msg = f"Path steps must be a positive integer, got {self.steps!r}"
            raise ValidationError(msg)
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def displacement(self) -> np.ndarray:
        return self.end - self.start

    @property
    def midpoint(self) -> np.ndarray:
        return self.start + 0.5 * self.displacement

    def step_midpoints(self) -> np.ndarray:
        t = (np.arange(self.steps) + 0.5) / self.steps
        return self.start + np.outer(t, self.displacement)

    def with_end(self, end: np.ndarray) -> Path:
        return Path(start=self.start, end=end, steps=self.steps)


@dataclass(frozen=True, eq=False)
class ExpansionResult:
    spinor: Spinor
    step_count: int
    transport: np.ndarray
    ordering: str = LEFT_ORDERED


@dataclass(frozen=True, eq=False)
class ChiralSplit:
    """Projections onto the π = -1 (left) and π = +1 (right) eigenspaces."""

    left: np.ndarray
    right: np.ndarray

    @property
    def left_spinor(self) -> Spinor:
        return Spinor(np.concatenate([self.left, np.zeros(2)]))

    @property
    def right_spinor(self) -> Spinor:
        return Spinor(np.concatenate([np.zeros(2), self.right]))
