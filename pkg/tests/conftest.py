import numpy as np
import pytest

from pathcurrents.presets import canonical_network

S2, S3, S6 = np.sqrt(2), np.sqrt(3), np.sqrt(6)


@pytest.fixture(scope="session")
def net():
    return canonical_network()
