import math

import pytest

from vlspeed import (
    CurvedScenario,
    LambertianParams,
    SIMULATED_CHANNEL_FIT,
    LAMBERTIAN_CHANNEL_FIT,
    StraightScenario,
)


@pytest.fixture
def straight():
    """Default straight-road setup: 0.5 m offset, 15 m start, 20 m/s."""
    return StraightScenario(d=0.5, r0=15.0, v=20.0)


@pytest.fixture
def curved():
    """Default curved-road setup: 40 m radius, 1 rad/s, start at pi/2."""
    return CurvedScenario(r_c=40.0, w=1.0, beta0=math.pi / 2)


@pytest.fixture
def k_sim():
    return SIMULATED_CHANNEL_FIT


@pytest.fixture
def k_lam():
    return LAMBERTIAN_CHANNEL_FIT


@pytest.fixture
def lam40(k_sim):
    """40 deg half-power emitter tied to the simulated-row constants."""
    return LambertianParams.from_gain_db(
        k_db=k_sim.k_db, phi_half=math.radians(40), gamma=k_sim.gamma, fov=math.radians(70)
    )


@pytest.fixture
def lam40_row(k_lam):
    """40 deg half-power emitter tied to the lambertian-row constants."""
    return LambertianParams.from_gain_db(
        k_db=k_lam.k_db, phi_half=math.radians(40), gamma=k_lam.gamma, fov=math.radians(70)
    )
