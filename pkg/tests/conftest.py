import numpy as np
import pytest

from abw.clifford import build_clifford, fiber_background
from abw.sm import build_sm_background, random_yukawa


@pytest.fixture(scope="session")
def cliff13():
    return build_clifford(1, 3)


@pytest.fixture(scope="session")
def fiber13(cliff13):
    return fiber_background(cliff13)


@pytest.fixture(scope="session")
def sm1():
    return build_sm_background(random_yukawa(1, seed=7))


@pytest.fixture(scope="session")
def sm2():
    return build_sm_background(random_yukawa(2, seed=7))


@pytest.fixture(scope="session")
def sm3():
    return build_sm_background(random_yukawa(3, seed=7))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
