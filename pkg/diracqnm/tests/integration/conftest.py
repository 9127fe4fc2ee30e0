import pytest

from diracqnm.spacetime.black_hole_params import BlackHoleParams
from diracqnm.tolerances import Tolerances

RN = BlackHoleParams(M=1.0, Q=0.3, a=0.0, Lambda=0.04)


@pytest.fixture(scope="package")
def rn() -> BlackHoleParams:
    return RN


@pytest.fixture(scope="package")
def rotating() -> BlackHoleParams:
    return RN.with_changes(a=0.02)


@pytest.fixture(scope="package")
def tolerances() -> Tolerances:
    return Tolerances.from_env()
