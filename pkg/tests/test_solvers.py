"""Unit tests for the exact clique and colouring solvers."""

from itertools import combinations, product

import networkx as nx
import pytest

from holebound.certificates import is_clique_certificate, is_proper_coloring
from holebound.graph import Graph, VertexSet, iter_bits
from holebound.holes import longest_hole
from holebound.solvers import (
    BudgetExhaustedError,
    SolverLimits,
    SolveStatus,
    SubsetChromaticCache,
    chi_of_subset,
    chromatic_number,
    color_subset,
    degeneracy_order_and_coloring,
    find_clique_with_large_n2,
    iter_clique_masks,
    omega,
)
from tests.conftest import complete_graph, cycle_graph


def _from_nx(g: nx.Graph) -> Graph:
    return Graph(g.number_of_nodes(), g.edges())


def _brute_chi(graph: Graph) -> int:
    edges = list(graph.edges())
    for k in range(graph.n + 1):
        for colours in product(range(k), repeat=graph.n):
            if all(colours[u] != colours[v] for u, v in edges):
                return k
    return graph.n


class TestOmega:
    @pytest.mark.parametrize(
        "graph, expected",
        [
            (Graph(0), 0),
            (Graph(3), 1),
            (cycle_graph(5), 2),
            (complete_graph(5), 5),
        ],
    )
    def test_known_values(self, graph, expected):
        result = omega(graph)
        assert result.complete
        assert result.size == expected
        assert len(result.witness) == expected
        assert is_clique_certificate(graph, result.witness)

    def test_petersen(self, petersen):
        assert omega(petersen).size == 2

    def test_within(self):
        g = complete_graph(5)
        assert omega(g, within=[1, 3, 4]).witness == VertexSet.of([1, 3, 4])

    def test_budget_exhausted_keeps_best(self, petersen):
        result = omega(petersen, SolverLimits(node_budget=0))
        assert result.status is SolveStatus.BUDGET_EXHAUSTED
        assert result.size == 0


class TestChromaticNumber:
    @pytest.mark.parametrize(
        "graph, expected",
        [
            (Graph(0), 0),
            (Graph(4), 1),
            (cycle_graph(6), 2),
            (cycle_graph(5), 3),
            (cycle_graph(9), 3),
            (complete_graph(4), 4),
        ],
    )
    def test_known_values(self, graph, expected):
        result = chromatic_number(graph)
        assert result.complete
        assert result.chi == expected
        assert result.lower == result.upper == expected
        assert result.coloring.num_colors == expected
        assert is_proper_coloring(graph, result.coloring)

    def test_petersen(self, petersen):
        assert chromatic_number(petersen).chi == 3

    def test_grotzsch_graph_needs_four_colours(self):
        grotzsch = _from_nx(nx.mycielski_graph(4))
        assert omega(grotzsch).size == 2
        assert chromatic_number(grotzsch).chi == 4

    def test_disconnected_components(self):
        g = Graph(8, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3)])
        assert chromatic_number(g).chi == 3

    def test_color_subset_uses_parent_ids(self, c5):
        result = color_subset(c5, [1, 2, 3])
        assert result.chi == 2
        assert set(result.coloring.assignment) == {1, 2, 3}
        assert is_proper_coloring(c5, result.coloring, vertices=[1, 2, 3])

    def test_budget_exhausted_reports_bounds(self, petersen):
        result = chromatic_number(petersen, SolverLimits(node_budget=0))
        assert result.status is SolveStatus.BUDGET_EXHAUSTED
        assert result.chi is None
        assert result.lower <= 3 <= result.upper
        assert is_proper_coloring(petersen, result.coloring)

    def test_to_json(self, c5):
        data = chromatic_number(c5).to_json()
        assert data["status"] == "complete"
        assert data["chi"] == 3
        assert data["coloring"]["num_colors"] == 3


class TestChiOfSubset:
    def test_memoised(self, petersen):
        cache = SubsetChromaticCache(10)
        assert chi_of_subset(petersen, [0, 1, 2, 3, 4], cache=cache) == 3
        assert chi_of_subset(petersen, [0, 1, 2, 3, 4], cache=cache) == 3
        assert cache.hits == 1
        assert len(cache) == 1

    def test_trivial_subsets_skip_cache(self, c5, cache):
        assert chi_of_subset(c5, [], cache=cache) == 0
        assert chi_of_subset(c5, [3], cache=cache) == 1
        assert len(cache) == 0

    def test_lru_eviction(self, c5):
        cache = SubsetChromaticCache(1)
        chi_of_subset(c5, [0, 1], cache=cache)
        chi_of_subset(c5, [1, 2], cache=cache)
        assert len(cache) == 1
        assert cache.get(c5, 0b11) is None

    def test_budget_raises_with_bounds(self, petersen, cache):
        with pytest.raises(BudgetExhaustedError) as exc_info:
            chi_of_subset(petersen, petersen.vertices, SolverLimits(node_budget=0), cache)
        assert exc_info.value.upper >= 3


class TestDegeneracy:
    def test_petersen_is_three_degenerate(self, petersen):
        result = degeneracy_order_and_coloring(petersen)
        assert result.degeneracy == 3
        assert sorted(result.order) == list(range(10))
        assert result.coloring.num_colors <= 4
        assert is_proper_coloring(petersen, result.coloring)

    def test_tree(self):
        g = Graph(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
        result = degeneracy_order_and_coloring(g)
        assert result.degeneracy == 1
        assert result.coloring.num_colors == 2


class TestCliquesWithLargeSecondNeighbourhood:
    def test_iter_clique_masks(self):
        k4 = complete_graph(4)
        assert len(list(iter_clique_masks(k4.adjacency_masks, k4.all_mask, 3))) == 4

    def test_petersen_second_neighbourhood_is_bipartite(self, petersen, cache):
        assert find_clique_with_large_n2(petersen, 1, 1, cache=cache) == VertexSet.of([0])
        assert find_clique_with_large_n2(petersen, 1, 2, cache=cache) is None

    def test_cycle(self, c9, cache):
        assert find_clique_with_large_n2(c9, 1, 0, cache=cache) == VertexSet.of([0])
        assert find_clique_with_large_n2(c9, 1, 1, cache=cache) is None
        assert find_clique_with_large_n2(c9, 2, 0, cache=cache) is None


@pytest.mark.slow
class TestAgainstBruteForce:
    @pytest.mark.parametrize("seed", range(25))
    def test_random_small_graphs(self, seed):
        g = nx.gnp_random_graph(7, 0.5, seed=seed)
        graph = _from_nx(g)
        expected_omega = max((len(c) for c in nx.find_cliques(g)), default=0)
        assert omega(graph).size == expected_omega
        assert chromatic_number(graph).chi == _brute_chi(graph)


SIX_VERTEX_PAIRS = list(combinations(range(6), 2))


def _is_induced_cycle(adj: tuple[int, ...], mask: int) -> bool:
    if any((adj[v] & mask).bit_count() != 2 for v in iter_bits(mask)):
        return False
    seen = frontier = mask & -mask
    while frontier:
        reach = 0
        for v in iter_bits(frontier):
            reach |= adj[v] & mask
        frontier = reach & ~seen
        seen |= frontier
    return seen == mask


def _brute_invariants(adj: tuple[int, ...]) -> tuple[int, int, int | None]:
    """(omega, chi, longest hole) by enumerating every vertex subset."""
    full = 1 << len(adj)
    stable = [not any(adj[v] & m for v in iter_bits(m)) for m in range(full)]
    clique = [all((adj[v] | 1 << v) & m == m for v in iter_bits(m)) for m in range(full)]
    chi = [0] * full
    for m in range(1, full):
        low = m & -m
        rest = m ^ low
        best = len(adj)
        sub = rest
        while True:
            part = sub | low
            if stable[part]:
                best = min(best, 1 + chi[m ^ part])
            if not sub:
                break
            sub = (sub - 1) & rest
        chi[m] = best
    holes = [m.bit_count() for m in range(full) if m.bit_count() >= 4 and _is_induced_cycle(adj, m)]
    return max(m.bit_count() for m in range(full) if clique[m]), chi[full - 1], max(holes, default=None)


@pytest.mark.slow
class TestAllSixVertexGraphs:
    @pytest.mark.parametrize("chunk", range(8))
    def test_matches_subset_enumeration(self, chunk):
        for edge_mask in range(chunk * 4096, (chunk + 1) * 4096):
            graph = Graph(6, [pair for bit, pair in enumerate(SIX_VERTEX_PAIRS) if edge_mask >> bit & 1])
            expected_omega, expected_chi, expected_hole = _brute_invariants(graph.adjacency_masks)
            assert omega(graph).size == expected_omega, edge_mask
            assert chromatic_number(graph).chi == expected_chi, edge_mask
            assert longest_hole(graph).length == expected_hole, edge_mask
