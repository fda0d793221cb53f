import numpy as np
import pytest

from spinor.domain import ConnectionField
from spinor.services import CliffordService, ConnectionService


MASS = 1.0


def random_spinors(rng: np.random.Generator, count: int) -> np.ndarray:
    """Components uniform in the complex unit square, shape (count, 4)."""
    return rng.uniform(-1.0, 1.0, (count, 4)) + 1j * rng.uniform(-1.0, 1.0, (count, 4))


def random_lorentz(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Boost times rotation times phase with parameters drawn in [-scale, scale]."""
    boost = CliffordService.boost(rng.uniform(-scale, scale, 3)).matrix
    rotation = CliffordService.rotation(rng.uniform(-np.pi, np.pi, 3)).matrix
    return boost @ rotation * np.exp(1j * rng.uniform(-np.pi, np.pi))


def flagpole_connection(m: float = MASS) -> ConnectionField:
    """P = 0 and the single tensorial component R_211 = -2m."""
    return ConnectionField.constant(np.zeros(4), ConnectionService.tensor_from_entries([(2, 1, 1, -2.0 * m)]))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def basis():
    return CliffordService.build_gamma_basis()


@pytest.fixture
def flagpole_conn() -> ConnectionField:
    return flagpole_connection()
