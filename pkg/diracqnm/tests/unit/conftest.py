import pytest

from diracqnm.spacetime.background import Background
from diracqnm.spacetime.black_hole_params import BlackHoleParams
from diracqnm.tolerances import Tolerances


@pytest.fixture
def rn_params() -> BlackHoleParams:
    return BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04)


@pytest.fixture
def rotating_params() -> BlackHoleParams:
    return BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04)


@pytest.fixture
def massive_params() -> BlackHoleParams:
    return BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04, q=0.0, m=0.05)


@pytest.fixture(scope="module")
def rn_background() -> Background:
    return Background.build(BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04), Tolerances())


@pytest.fixture(scope="module")
def rotating_background() -> Background:
    return Background.build(BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04), Tolerances())


@pytest.fixture(scope="module")
def massive_background() -> Background:
    return Background.build(BlackHoleParams(M=1.0, Q=0.3, a=0.05, Lambda=0.04, m=0.05), Tolerances())
