import pytest

from softfish.hyperelastic import DEMO_MATERIAL, ECOFLEX_30, MaterialParams
from softfish.tail_actuator import ActuatorGeometry

# Three material pairs used across the suites: the silicone
# calibration pair (negative shear modulus, usable only as a stress
# anchor), the well-posed pair the simulator runs with, and a generic
# stable rubber pair.
MATERIAL_PAIRS = (
    ECOFLEX_30,
    DEMO_MATERIAL,
    MaterialParams(c1=100e3, c2=20e3),
)


@pytest.fixture
def geometry():
    return ActuatorGeometry()
