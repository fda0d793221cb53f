from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class LounestoLabel(str, Enum):
    REGULAR_PHI_THETA = "Regular(Phi!=0,Theta!=0)"
    REGULAR_PHI = "Regular(Phi!=0,Theta=0)"
    REGULAR_THETA = "Regular(Phi=0,Theta!=0)"
    FLAG_DIPOLE = "FlagDipole"
    FLAGPOLE = "Flagpole"
    DIPOLE = "Dipole"

    @property
    def number(self) -> int:
        """Lounesto class number, 1 to 6."""
        return list(LounestoLabel).index(self) + 1

    @property
    def is_regular(self) -> bool:
        return self in (LounestoLabel.REGULAR_PHI_THETA, LounestoLabel.REGULAR_PHI, LounestoLabel.REGULAR_THETA)

    @property
    def is_singular(self) -> bool:
        return not self.is_regular


@dataclass(frozen=True)
class LounestoClass:
    label: LounestoLabel
    tolerance_used: float
    # |Phi|/U0, |Theta|/U0, max|S|/U0, max|M|/U0
    magnitudes: dict[str, float] = field(default_factory=dict)

    @property
    def is_regular(self) -> bool:
        return self.label.is_regular
