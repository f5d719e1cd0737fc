import numpy as np
import pytest

from witnesslp import build_basis


@pytest.fixture(scope="session")
def basis2():
    return build_basis(2)


@pytest.fixture(scope="session")
def basis3():
    return build_basis(3)


@pytest.fixture(scope="session")
def basis4():
    return build_basis(4)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def ket(n, i, j):
    """Computational product ket |ij> on an n x n bipartite space."""
    v = np.zeros(n * n, dtype=complex)
    v[i * n + j] = 1.0
    return v


def proj(v):
    return np.outer(v, v.conj())
