import pytest

from buildgeom.building import an_building, thin_building, weak_join
from buildgeom.coxeter import CoxeterDiagram
from buildgeom.simplicial import SimplicialComplex, make_complex


@pytest.fixture(scope="session")
def fano():
    return an_building(2, 2)


@pytest.fixture(scope="session")
def fano_s0(fano):
    return weak_join(fano, 0)


@pytest.fixture(scope="session")
def thin_hexagon():
    return thin_building(CoxeterDiagram.of_type("A", 2))


@pytest.fixture
def hexagon() -> SimplicialComplex:
    return make_complex([[i, (i + 1) % 6] for i in range(6)])


@pytest.fixture
def octahedron() -> SimplicialComplex:
    from buildgeom.simplicial import sphere_complex

    return sphere_complex(2)
