"""Unit tests for the graph core (holebound/graph.py)."""

import pytest

from holebound.graph import (
    Coloring,
    Graph,
    GraphInputError,
    Hole,
    VertexSet,
    components,
    covers,
    distance_layers,
    induced_subgraph,
    is_anticomplete_between,
    is_clique,
    is_complete_between,
    is_stable,
    n1,
    n2,
    shortest_path,
)
from tests.conftest import complete_graph, cycle_graph, path_graph


class TestVertexSet:
    def test_set_operations(self):
        a = VertexSet.of([0, 2, 5])
        b = VertexSet.of([2, 3])
        assert list(a | b) == [0, 2, 3, 5]
        assert list(a & b) == [2]
        assert list(a - b) == [0, 5]
        assert len(a) == 3
        assert 5 in a and 4 not in a
        assert a.min() == 0

    def test_subset_and_disjoint(self):
        assert VertexSet.of([1]).issubset(VertexSet.of([1, 2]))
        assert VertexSet.of([1]).isdisjoint(VertexSet.of([2]))

    def test_json_is_sorted_list(self):
        vs = VertexSet.of([4, 1, 3])
        assert vs.to_json() == [1, 3, 4]
        assert VertexSet.from_json([3, 1, 4]) == vs

    def test_negative_vertex_rejected(self):
        with pytest.raises(GraphInputError):
            VertexSet.of([-1])


class TestGraph:
    def test_edges_and_degree(self):
        g = path_graph(4)
        assert g.n == 4
        assert g.num_edges == 3
        assert list(g.edges()) == [(0, 1), (1, 2), (2, 3)]
        assert g.degree(1) == 2
        assert g.has_edge(2, 1)
        assert not g.has_edge(0, 3)

    def test_loop_rejected(self):
        with pytest.raises(GraphInputError):
            Graph(3, [(1, 1)])

    def test_out_of_range_edge_rejected(self):
        with pytest.raises(GraphInputError):
            Graph(3, [(0, 3)])

    def test_check_set_rejects_foreign_vertex(self):
        with pytest.raises(GraphInputError):
            cycle_graph(4).check_set([4])

    def test_from_masks_requires_symmetry(self):
        with pytest.raises(GraphInputError):
            Graph.from_masks([0b10, 0b00])

    def test_equality_by_adjacency(self):
        assert cycle_graph(5) == Graph(5, [(1, 0), (2, 1), (3, 2), (4, 3), (0, 4)])


class TestSubgraphs:
    def test_induced_subgraph_relabels(self):
        sub, relabel = induced_subgraph(cycle_graph(6), [1, 2, 3, 5])
        assert relabel == (1, 2, 3, 5)
        assert sorted(sub.edges()) == [(0, 1), (1, 2)]

    def test_complete_and_anticomplete(self):
        g = complete_graph(4)
        assert is_complete_between(g, [0, 1], [2, 3])
        assert not is_anticomplete_between(g, [0], [1])
        c6 = cycle_graph(6)
        assert is_anticomplete_between(c6, [0], [3])

    def test_predicates_require_disjoint_sets(self):
        with pytest.raises(GraphInputError):
            is_complete_between(cycle_graph(5), [0, 1], [1, 2])

    def test_covers(self):
        c6 = cycle_graph(6)
        assert covers(c6, [0, 3], [1, 2, 4, 5])
        assert not covers(c6, [0], [2])

    def test_clique_and_stable(self):
        c5 = cycle_graph(5)
        assert is_clique(c5, [0, 1])
        assert not is_clique(c5, [0, 2])
        assert is_stable(c5, [0, 2])
        assert is_stable(c5, [])


class TestNeighbourhoods:
    def test_n1_n2_on_c5(self):
        c5 = cycle_graph(5)
        assert list(n1(c5, [0])) == [1, 4]
        assert list(n2(c5, [0])) == [2, 3]

    def test_n1_of_edge(self):
        g = complete_graph(4)
        assert list(n1(g, [0, 1])) == [2, 3]
        assert len(n2(g, [0, 1])) == 0

    def test_n2_of_petersen_vertex(self, petersen):
        assert list(n2(petersen, [0])) == [2, 3, 6, 7, 8, 9]

    def test_non_clique_rejected(self):
        with pytest.raises(GraphInputError):
            n1(cycle_graph(5), [0, 2])

    def test_within_restricts(self):
        c5 = cycle_graph(5)
        assert list(n1(c5, [0], within=[0, 1, 2])) == [1]


class TestTraversal:
    def test_distance_layers_of_cycle(self, c9):
        layers = distance_layers(c9, 0)
        assert [list(layer) for layer in layers] == [[0], [1, 8], [2, 7], [3, 6], [4, 5]]

    def test_distance_layers_stay_in_component(self):
        g = Graph(4, [(0, 1), (2, 3)])
        assert [list(layer) for layer in distance_layers(g, 2)] == [[2], [3]]

    def test_components(self):
        g = Graph(5, [(0, 1), (3, 4)])
        assert [list(c) for c in components(g)] == [[0, 1], [2], [3, 4]]

    def test_shortest_path(self, c9):
        assert shortest_path(c9, 0, 3, c9.vertices) == [0, 1, 2, 3]
        assert shortest_path(c9, 0, 3, [4, 5, 6, 7, 8]) == [0, 8, 7, 6, 5, 4, 3]

    def test_shortest_path_missing(self):
        g = Graph(3, [(0, 1)])
        assert shortest_path(g, 0, 2, g.vertices) is None


class TestCertificateTypes:
    def test_coloring_classes(self):
        col = Coloring({0: 0, 1: 1, 2: 0}, 2)
        assert [list(c) for c in col.color_classes()] == [[0, 2], [1]]
        assert Coloring.from_json(col.to_json()) == col

    def test_hole_needs_four_distinct_vertices(self):
        with pytest.raises(GraphInputError):
            Hole((0, 1, 2))
        with pytest.raises(GraphInputError):
            Hole((0, 1, 2, 1))
        assert Hole((0, 1, 2, 3)).length == 4
