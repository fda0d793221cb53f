from .finite_difference import FiniteDifferenceService
from .hash import HashService

__all__ = [
    "FiniteDifferenceService",
    "HashService",
]
