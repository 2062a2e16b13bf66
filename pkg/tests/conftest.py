import numpy as np
import pytest

from qfisher.matrixcore import DensityMatrix


@pytest.fixture
def rho_z06():
    """Qubit state diag(0.8, 0.2), Bloch vector (0, 0, 0.6)."""
    return DensityMatrix(np.diag([0.8, 0.2]).astype(complex))


@pytest.fixture
def rho_mixed():
    return DensityMatrix(np.eye(2, dtype=complex) / 2)


@pytest.fixture
def rho_pure():
    return DensityMatrix(np.diag([1.0, 0.0]).astype(complex))
