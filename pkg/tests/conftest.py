import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from factorium.enumeration import enumerate_graphs  # noqa: E402
from factorium.graph import (  # noqa: E402
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    parse_graph6,
    path_graph,
    petersen_graph,
    star_graph,
)


@functools.lru_cache(maxsize=None)
def graphs_on(n: int) -> tuple:
    return tuple(enumerate_graphs(n))


@pytest.fixture(scope="session")
def all_graphs():
    return graphs_on


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c4():
    return parse_graph6("Cl")


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def k13():
    return star_graph(3)


@pytest.fixture
def p3():
    return path_graph(3)


@pytest.fixture
def k33():
    return complete_bipartite_graph(3, 3)


@pytest.fixture
def petersen():
    return petersen_graph()
