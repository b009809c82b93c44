import numpy as np
import pytest

from designlab.designs import bbd_build
from designlab.fixtures import fixture_field
from designlab.gf import Field
from designlab.mds import linear_mds

SEED = 20240611


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def gf9():
    return fixture_field()


@pytest.fixture(scope="session")
def gf16():
    return Field(2, 4)


@pytest.fixture(scope="session")
def parity9(gf9):
    """{(x, y, x + y)} over GF(9): the latin-square code of order 9."""
    return linear_mds(gf9, 3, 2)


@pytest.fixture(scope="session")
def bbd8():
    return bbd_build(8, 2)
