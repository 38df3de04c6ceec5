import math

import numpy as np
import pytest

from fencekit.auerbach import build_auerbach
from fencekit.chl import build, rounded_triangle_profile
from fencekit.generators import disc, equilateral_triangle, unit_square


@pytest.fixture(scope="session")
def square():
    return unit_square()


@pytest.fixture(scope="session")
def triangle():
    return equilateral_triangle()


@pytest.fixture(scope="session")
def unit_disc():
    return disc(math.pi)


@pytest.fixture(scope="session")
def auerbach():
    return build_auerbach()


@pytest.fixture(scope="session")
def rounded():
    return build(rounded_triangle_profile())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
