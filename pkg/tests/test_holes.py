"""Unit tests for hole search and chordality."""

import networkx as nx
import pytest

from holebound.certificates import is_induced_hole
from holebound.graph import Graph, GraphInputError
from holebound.holes import find_hole_at_least, is_chordal, longest_hole, maximum_cardinality_order
from holebound.solvers import SolverLimits, SolveStatus
from tests.conftest import complete_graph, cycle_graph, path_graph


class TestFindHole:
    def test_cycle_itself(self, c9):
        result = find_hole_at_least(c9, 9)
        assert result.complete
        assert result.length == 9
        assert is_induced_hole(c9, result.hole, 9)

    def test_threshold_above_longest(self, c9):
        result = find_hole_at_least(c9, 10)
        assert result.complete
        assert result.hole is None

    def test_triangle_free_but_chordal(self):
        result = find_hole_at_least(path_graph(6), 4)
        assert result.hole is None

    def test_threshold_below_four_rejected(self, c5):
        with pytest.raises(GraphInputError):
            find_hole_at_least(c5, 3)

    def test_within(self, petersen):
        result = find_hole_at_least(petersen, 5, within=[0, 1, 2, 3, 4])
        assert sorted(result.hole.cycle) == [0, 1, 2, 3, 4]

    def test_budget_exhausted(self, c9):
        result = find_hole_at_least(c9, 4, SolverLimits(node_budget=0))
        assert result.status is SolveStatus.BUDGET_EXHAUSTED
        assert result.hole is None


class TestLongestHole:
    def test_petersen(self, petersen):
        result = longest_hole(petersen)
        assert result.length == 6
        assert is_induced_hole(petersen, result.hole)

    def test_complete_graph_has_none(self):
        result = longest_hole(complete_graph(5))
        assert result.complete
        assert result.length is None
        assert result.to_json() == {"status": "complete", "length": None, "hole": None, "nodes": result.nodes}

    def test_wheel_keeps_rim(self):
        g = Graph(7, [(i, (i + 1) % 6) for i in range(6)] + [(6, i) for i in range(6)])
        assert longest_hole(g).length == 6

    def test_cycle_with_chord(self):
        g = Graph(8, [(i, (i + 1) % 8) for i in range(8)] + [(0, 3)])
        assert longest_hole(g).length == 6


class TestChordal:
    def test_mcs_visits_every_vertex(self, petersen):
        assert sorted(maximum_cardinality_order(petersen)) == list(range(10))

    @pytest.mark.parametrize(
        "graph, expected",
        [
            (path_graph(5), True),
            (complete_graph(4), True),
            (Graph(0), True),
            (cycle_graph(4), False),
            (cycle_graph(7), False),
        ],
    )
    def test_known(self, graph, expected):
        assert is_chordal(graph) is expected

    @pytest.mark.parametrize("seed", range(10))
    def test_agrees_with_networkx(self, seed):
        g = nx.gnp_random_graph(9, 0.4, seed=seed)
        graph = Graph(9, g.edges())
        assert is_chordal(graph) == nx.is_chordal(g)
        assert is_chordal(graph) == (longest_hole(graph).hole is None)
