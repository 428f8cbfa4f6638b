import pytest

from cellforest.complexes import from_facets
from cellforest.families import named_complex, simplex_skeleton


@pytest.fixture(scope="session")
def k3():
    return simplex_skeleton(3, 1).to_chain_complex()


@pytest.fixture(scope="session")
def k4():
    return simplex_skeleton(4, 1).to_chain_complex()


@pytest.fixture(scope="session")
def c4():
    return from_facets(4, [{1, 2}, {2, 3}, {3, 4}, {1, 4}]).to_chain_complex()


@pytest.fixture(scope="session")
def bipyramid():
    return named_complex("bipyramid")


@pytest.fixture(scope="session")
def rp2_cell():
    return named_complex("rp2_cell")


@pytest.fixture(scope="session")
def rp2_six():
    return named_complex("rp2_six_vertex")


@pytest.fixture(scope="session")
def moebius():
    return named_complex("moebius")


@pytest.fixture(scope="session")
def annulus():
    return named_complex("annulus")
