import math

import pytest

from magblock import SystemParams

# Standard operating slice: resonant qubit/magnon, Gamma = 5, drive detuned
# to the contrast maximum.
OPERATING_DELTA = -10.2


@pytest.fixture
def operating_forward() -> SystemParams:
    return SystemParams().with_delta(OPERATING_DELTA).with_updates(theta=0.0)


@pytest.fixture
def operating_backward() -> SystemParams:
    return SystemParams().with_delta(OPERATING_DELTA).with_updates(theta=math.pi)
