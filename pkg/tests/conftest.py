"""Shared test fixtures for holebound tests."""

from itertools import combinations

import pytest

from holebound.graph import Graph
from holebound.solvers import SubsetChromaticCache


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def c9():
    return cycle_graph(9)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def cache():
    return SubsetChromaticCache(1000)
