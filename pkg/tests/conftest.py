import pathlib

import pytest

from oChroma import config
from oChroma.catalog_io import builtin, builtin_cubic
from oChroma.plane_graph import build_graph
from oChroma.orientation import OrientationAssignment
from oChroma.transforms import connect_sum_edge, connect_sum_vertex


@pytest.fixture
def golden_dir():
    return pathlib.Path(config.get_golden_dir())


@pytest.fixture(scope='session')
def fig7a():
    return builtin('fig7a')


@pytest.fixture(scope='session')
def fig7b():
    return builtin('fig7b')


@pytest.fixture(scope='session')
def fig7c():
    return builtin('fig7c')


@pytest.fixture(scope='session')
def whitehead():
    return builtin('whitehead')


@pytest.fixture(scope='session')
def star6():
    return builtin('star6')


@pytest.fixture(scope='session')
def star8():
    return builtin('star8')


@pytest.fixture(scope='session')
def k4():
    return builtin_cubic('k4')


@pytest.fixture(scope='session')
def petersen():
    return builtin_cubic('petersen')


@pytest.fixture
def edge_sum(fig7b):
    """Two digon graphs joined along an edge: the joined edges form a 2-edge cut."""
    sigma = fig7b.orientations['default']
    return connect_sum_edge(fig7b.graph, 0, fig7b.graph, 0, 0, sigma, sigma)


@pytest.fixture
def vertex_sum(fig7b):
    """Two digon graphs joined at a new transverse cut-vertex."""
    sigma = fig7b.orientations['default']
    return connect_sum_vertex(fig7b.graph, sigma, 0, fig7b.graph, sigma, 0, transverse=True)


@pytest.fixture
def two_bouquets():
    """Two one-vertex graphs with two loops each, side by side."""
    graph = build_graph([(0, 0), (0, 0), (1, 1), (1, 1)], [(0, 1, 2, 3), (4, 5, 6, 7)])
    return graph, OrientationAssignment(graph, (0, 0))
