import mpmath
import pytest

from rsext.oracle import OracleConfig


@pytest.fixture
def tight_oracle():
    return OracleConfig(target_abs_err=1e-14)


@pytest.fixture
def mp50():
    with mpmath.workdps(50):
        yield mpmath.mp
