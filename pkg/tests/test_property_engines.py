# Feature: holebound, Property: engines return verified certificates and Ramsey search matches enumeration
"""Property-based tests for the layered decomposition and the monochromatic subset search."""

from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from holebound.certificates import is_induced_hole, is_proper_coloring
from holebound.engines import decomposition_bound, longhole_decompose, monochromatic_subset
from holebound.graph import Graph, VertexSet, n2
from holebound.solvers import SubsetChromaticCache, chi_of_subset

N_VERTICES = 8
ALL_PAIRS = list(combinations(range(N_VERTICES), 2))

graphs = st.lists(st.sampled_from(ALL_PAIRS), unique=True).map(lambda edges: Graph(N_VERTICES, edges))


def local_bounds(graph: Graph, cache: SubsetChromaticCache) -> tuple[int, int]:
    adj = graph.adjacency_masks
    kappa = max(chi_of_subset(graph, VertexSet(adj[v]), cache=cache) for v in graph.vertices)
    tau = max(chi_of_subset(graph, n2(graph, [v]), cache=cache) for v in graph.vertices)
    return kappa, tau


@settings(max_examples=80, deadline=None)
@given(graph=graphs, ell=st.integers(min_value=4, max_value=7))
def test_decomposition_returns_verified_certificate(graph, ell):
    """With kappa and tau set to the graph's own local maxima the checked run always finishes."""
    cache = SubsetChromaticCache(4096)
    kappa, tau = local_bounds(graph, cache)
    result = longhole_decompose(graph, ell, kappa, tau, cache=cache)
    assert result.bound == decomposition_bound(ell, kappa, tau)
    if result.coloring is not None:
        assert result.hole is None
        assert is_proper_coloring(graph, result.coloring)
        assert result.coloring.num_colors <= result.bound
    else:
        assert is_induced_hole(graph, result.hole, ell)


def naive_monochromatic(colors: dict, t: int, m: int):
    for subset in combinations(range(t), m):
        if len({colors[pair] for pair in combinations(subset, 2)}) <= 1:
            return subset
    return None


@settings(max_examples=150)
@given(t=st.integers(min_value=0, max_value=8), m=st.integers(min_value=2, max_value=5), data=st.data())
def test_monochromatic_subset_matches_enumeration(t, m, data):
    pairs = list(combinations(range(t), 2))
    colours = data.draw(st.lists(st.integers(min_value=0, max_value=2), min_size=len(pairs), max_size=len(pairs)))
    colors = dict(zip(pairs, colours))
    found = monochromatic_subset(colors, t, m)
    expected = naive_monochromatic(colors, t, m)
    assert (found is None) == (expected is None)
    if found is not None:
        assert len(found) == m
        assert list(found) == sorted(set(found))
        assert len({colors[pair] for pair in combinations(found, 2)}) == 1
