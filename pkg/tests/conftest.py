import numpy as np
import pytest

from slpsim import (
    GridSpec,
    InitialPulse,
    MediumParams,
    quasi_standing_schedule,
    standing_wave_schedule,
)


@pytest.fixture
def medium():
    return MediumParams(gamma_ba=100.0, gamma_bc=0.0, l_a=0.1, L=20.0)


@pytest.fixture
def grid():
    return GridSpec(n_z=1024, z_min=-10.0, z_max=10.0, cfl=0.5)


@pytest.fixture
def pulse():
    return InitialPulse(amplitude=1.0, pulse_length=1.0, center=0.0)


@pytest.fixture
def standing():
    return standing_wave_schedule()


@pytest.fixture
def quasi():
    return quasi_standing_schedule(0.55)
