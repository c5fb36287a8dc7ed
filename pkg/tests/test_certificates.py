"""Unit tests for the independent certificate checkers."""

from holebound.certificates import (
    coloring_defect,
    hole_defect,
    is_clique_certificate,
    is_induced_hole,
    is_proper_coloring,
)
from holebound.graph import Coloring, Graph, Hole
from tests.conftest import cycle_graph


class TestColoringCheck:
    def test_proper_three_colouring_of_c5(self, c5):
        col = Coloring({0: 0, 1: 1, 2: 0, 3: 1, 4: 2}, 3)
        assert is_proper_coloring(c5, col)

    def test_monochromatic_edge(self, c5):
        col = Coloring({0: 0, 1: 1, 2: 0, 3: 1, 4: 0}, 2)
        assert coloring_defect(c5, col) == "edge 0-4 is monochromatic (colour 0)"

    def test_uncoloured_vertex(self, c5):
        col = Coloring({0: 0, 1: 1}, 2)
        assert coloring_defect(c5, col) == "vertex 2 is uncoloured"

    def test_colour_out_of_range(self, c5):
        col = Coloring({v: v for v in range(5)}, 3)
        assert "outside range(3)" in coloring_defect(c5, col)

    def test_subset_only(self, c5):
        col = Coloring({0: 0, 2: 0}, 1)
        assert is_proper_coloring(c5, col, vertices=[0, 2])


class TestHoleCheck:
    def test_cycle_is_hole(self, c9):
        assert is_induced_hole(c9, Hole(tuple(range(9))))

    def test_chord_detected(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
        assert hole_defect(g, Hole((0, 1, 2, 3, 4))) == "chord 0-2"

    def test_missing_edge_detected(self, c9):
        assert "not adjacent" in hole_defect(c9, Hole((0, 1, 2, 4)))

    def test_min_length(self, c5):
        assert hole_defect(c5, Hole((0, 1, 2, 3, 4)), min_length=6) == "length 5 is below 6"

    def test_foreign_vertex(self):
        assert "not in the graph" in hole_defect(cycle_graph(4), Hole((0, 1, 2, 7)))


class TestCliqueCheck:
    def test_edge_and_non_edge(self, c5):
        assert is_clique_certificate(c5, [0, 1])
        assert not is_clique_certificate(c5, [0, 2])
        assert not is_clique_certificate(c5, [0, 9])
