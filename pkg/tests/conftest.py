import pytest

from toriflex.lattice import Cone, positive_orthant, quadrant, singular_threefold


@pytest.fixture
def cone_quadrant() -> Cone:
    return quadrant()


@pytest.fixture
def cone_octant() -> Cone:
    return positive_orthant(3)


@pytest.fixture
def cone_threefold() -> Cone:
    return singular_threefold()
