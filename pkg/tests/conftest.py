import numpy as np
import pytest

from ftnpapr.pulse import PulseShape

BETA = 0.3
T = 0.01


@pytest.fixture(scope="session")
def shape_nyquist() -> PulseShape:
    return PulseShape(beta=BETA, T=T, delta=1.0)


@pytest.fixture(scope="session")
def shape_moderate() -> PulseShape:
    """delta = 0.8, above the regime boundary 1/(1+beta) = 0.769."""
    return PulseShape(beta=BETA, T=T, delta=0.8)


@pytest.fixture(scope="session")
def shape_small() -> PulseShape:
    """delta = 0.5, below the regime boundary."""
    return PulseShape(beta=BETA, T=T, delta=0.5)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(0xF7A9)
