import numpy as np
import pytest

from orbiloop.config import get_catalog
from orbiloop.groupoids import GroupoidMap


@pytest.fixture(scope="session")
def catalog():
    return get_catalog()


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def point_into_bz2(catalog):
    """The map pt -> BZ2 sending the only object to the only object."""
    pt, bz2 = catalog.groupoid("pt"), catalog.groupoid("BZ2")
    return GroupoidMap(pt, bz2, {"*": "*"}, {pt.identity("*"): "0"}, name="base point")
