import numpy as np
import pytest

from geodiscord.states import random_state
from geodiscord.verification import SUPPORTED_DIMS

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_density(m, n, seed, rank=None):
    return random_state(m * n, rank=rank, seed=seed, dims=(m, n))


@pytest.fixture(scope="session")
def random_ensemble():
    """50 states per supported bipartition, ranks cycling 1..mn."""
    states = []
    for m, n in SUPPORTED_DIMS:
        for i in range(50):
            states.append(random_density(m, n, seed=[7, m, n, i], rank=1 + i % (m * n)))
    return states
