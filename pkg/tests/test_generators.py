"""Unit tests for the seeded graph generators."""

import networkx as nx
import pytest

from holebound.engines import classify_cable_pairs
from holebound.generators import (
    gen_chordal,
    gen_gnp,
    gen_planted_cable,
    gen_planted_tick_cluster,
    gen_planted_tick_multicover,
)
from holebound.graph import GraphInputError
from holebound.holes import is_chordal, longest_hole
from holebound.solvers import chromatic_number, color_subset, omega
from holebound.structures import PairType, verify_cable, verify_multicover


def to_nx(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


class TestGnp:
    def test_same_seed_same_graph(self):
        assert gen_gnp(20, 0.3, seed=42) == gen_gnp(20, 0.3, seed=42)

    def test_extreme_probabilities(self):
        assert gen_gnp(6, 0.0, seed=1).num_edges == 0
        assert gen_gnp(6, 1.0, seed=1).num_edges == 15

    @pytest.mark.parametrize("n, p", [(-1, 0.5), (5, 1.5), (5, -0.1)])
    def test_invalid(self, n, p):
        with pytest.raises(GraphInputError):
            gen_gnp(n, p, seed=0)


class TestChordal:
    @pytest.mark.parametrize("seed", range(6))
    def test_is_chordal_with_bounded_clique(self, seed):
        graph = gen_chordal(14, 3, seed)
        assert graph.n == 14
        assert nx.is_chordal(to_nx(graph))
        assert is_chordal(graph)
        assert omega(graph).size <= 4

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(1000))
    def test_perfect_without_holes(self, seed):
        graph = gen_chordal(5 + seed % 36, 1 + seed % 4, seed)
        assert longest_hole(graph).length is None
        assert chromatic_number(graph).chi == omega(graph).size

    def test_connected(self):
        assert nx.is_connected(to_nx(gen_chordal(12, 2, seed=3)))

    def test_deterministic(self):
        assert gen_chordal(15, 4, seed=9) == gen_chordal(15, 4, seed=9)

    def test_width_out_of_range(self):
        with pytest.raises(GraphInputError):
            gen_chordal(5, 0, seed=0)
        with pytest.raises(GraphInputError):
            gen_chordal(5, 6, seed=0)


class TestPlantedCable:
    @pytest.mark.parametrize("kind", [PairType.TYPE1, PairType.TYPE2])
    def test_uniform_types_verify(self, kind):
        graph, cable = gen_planted_cable(1, 3, kind, 2, seed=6)
        assert verify_cable(graph, cable).ok
        assert set(classify_cable_pairs(graph, cable).values()) == {kind}

    def test_base_reaches_chi_target(self):
        graph, cable = gen_planted_cable(1, 2, PairType.TYPE2, 3, seed=2)
        assert color_subset(graph, cable.C).chi == 3

    def test_length_zero_is_base_only(self):
        graph, cable = gen_planted_cable(1, 0, PairType.TYPE1, 2, seed=0)
        assert cable.length == 0
        assert verify_cable(graph, cable).ok

    def test_deterministic(self):
        first = gen_planted_cable(1, 3, PairType.TYPE2, 2, seed=13)
        second = gen_planted_cable(1, 3, PairType.TYPE2, 2, seed=13)
        assert first[0] == second[0]
        assert first[1].to_json() == second[1].to_json()

    def test_incomplete_type_matrix(self):
        with pytest.raises(GraphInputError):
            gen_planted_cable(1, 3, {(0, 1): PairType.TYPE1}, 1, seed=0)

    def test_bad_pair_key(self):
        with pytest.raises(GraphInputError):
            gen_planted_cable(1, 2, {(1, 0): PairType.TYPE1}, 1, seed=0)

    def test_invalid_sizes(self):
        with pytest.raises(GraphInputError):
            gen_planted_cable(0, 2, PairType.TYPE1, 1, seed=0)
        with pytest.raises(GraphInputError):
            gen_planted_cable(1, -1, PairType.TYPE1, 1, seed=0)


class TestPlantedTicks:
    def test_multicover_is_stable(self):
        planted = gen_planted_tick_multicover(3, 2, seed=0)
        assert len(planted.multicover.X) == 3
        assert len(planted.apexes) == 1
        assert verify_multicover(planted.graph, planted.multicover, require_stable_N=True).ok

    def test_cluster_has_one_apex_per_round(self):
        planted = gen_planted_tick_cluster(3, seed=1)
        assert len(planted.apexes) == 3
        assert set(planted.apexes) <= set(planted.multicover.C)
        assert verify_multicover(planted.graph, planted.multicover, require_stable_N=True).ok

    def test_invalid(self):
        with pytest.raises(GraphInputError):
            gen_planted_tick_multicover(0, 1, seed=0)
