"""Seeded single-clause mutations of valid structures; each verifier must name the clause that broke."""

from dataclasses import replace

import numpy as np
import pytest

from holebound.generators import gen_planted_cable, gen_planted_tick_multicover
from holebound.graph import Graph, VertexSet, lowest_bit
from holebound.structures import (
    Cover,
    Impression,
    Multicover,
    PairType,
    Tick,
    complete_bipartite_pattern,
    verify_cable,
    verify_cover,
    verify_impression,
    verify_multicover,
    verify_tick_tangent,
)

SEEDS = range(100)


def with_edges(graph, *edges):
    return Graph(graph.n, [*graph.edges(), *edges])


def without_edge(graph, u, v):
    return Graph(graph.n, [e for e in graph.edges() if set(e) != {u, v}])


def with_isolated(graph):
    return Graph(graph.n + 1, graph.edges()), graph.n


def pick(rng, vertices):
    items = sorted(vertices)
    return items[int(rng.integers(0, len(items)))]


def pick_two(rng, vertices):
    items = sorted(vertices)
    i, j = rng.choice(len(items), size=2, replace=False)
    return items[int(i)], items[int(j)]


def plus(vertices, *extra):
    return vertices | VertexSet.of(extra)


def planted_multicover(seed):
    planted = gen_planted_tick_multicover(2 + seed % 3, 1 + seed % 2, seed)
    return planted.graph, planted.multicover, planted.apexes[0]


# --- Covers ----------------------------------------------------------------------


def cover_x_in_own_n(rng, g, cover, others):
    return "N-neighbours", g, replace(cover, N=plus(cover.N, cover.x))


def cover_stranger_in_n(rng, g, cover, others):
    return "N-neighbours", g, replace(cover, N=plus(cover.N, pick(rng, others)))


def cover_n_in_c(rng, g, cover, others):
    return "C-disjoint", g, replace(cover, C=plus(cover.C, pick(rng, cover.N)))


def cover_x_sees_c(rng, g, cover, others):
    return "x-anticomplete-C", with_edges(g, (cover.x, pick(rng, cover.C))), cover


def cover_lonely_c(rng, g, cover, others):
    g, w = with_isolated(g)
    return "N-covers-C", g, replace(cover, C=plus(cover.C, w))


def cover_unknown_vertex(rng, g, cover, others):
    return "vertex-ids", g, replace(cover, C=plus(cover.C, g.n))


COVER_MUTATIONS = [
    cover_x_in_own_n, cover_stranger_in_n, cover_n_in_c, cover_x_sees_c, cover_lonely_c, cover_unknown_vertex,
]


@pytest.mark.parametrize("seed", SEEDS)
def test_cover_mutation_names_clause(seed):
    rng = np.random.default_rng(seed)
    g, mc, _ = planted_multicover(seed)
    x = pick(rng, mc.X)
    cover = mc.cover(x)
    assert verify_cover(g, cover).ok
    clause, g, cover = COVER_MUTATIONS[seed % len(COVER_MUTATIONS)](rng, g, cover, mc.X - VertexSet.of([x]))
    verdict = verify_cover(g, cover)
    assert verdict.failed(clause), verdict.to_json()


# --- Multicovers -----------------------------------------------------------------


def mc_join_x(rng, g, mc):
    return "X-stable", with_edges(g, pick_two(rng, mc.X)), mc


def mc_x_sees_c(rng, g, mc):
    return "x-anticomplete-C", with_edges(g, (pick(rng, mc.X), pick(rng, mc.C))), mc


def mc_cross_edge(rng, g, mc):
    x, y = pick_two(rng, mc.X)
    return "cross-anticomplete", with_edges(g, (y, pick(rng, mc.N[x]))), mc


def mc_stranger_in_n(rng, g, mc):
    x, y = pick_two(rng, mc.X)
    return "N-neighbours", g, Multicover(mc.X, {**mc.N, x: plus(mc.N[x], y)}, mc.C)


def mc_lonely_c(rng, g, mc):
    g, w = with_isolated(g)
    return "N-covers-C", g, Multicover(mc.X, mc.N, plus(mc.C, w))


def mc_shared_n(rng, g, mc):
    x, y = pick_two(rng, mc.X)
    return "disjoint", g, Multicover(mc.X, {**mc.N, x: plus(mc.N[x], pick(rng, mc.N[y]))}, mc.C)


def mc_missing_key(rng, g, mc):
    x = pick(rng, mc.X)
    return "N-keys", g, Multicover(mc.X, {y: n for y, n in mc.N.items() if y != x}, mc.C)


def mc_x_in_c(rng, g, mc):
    return "C-disjoint", g, Multicover(mc.X, mc.N, plus(mc.C, pick(rng, mc.X)))


MULTICOVER_MUTATIONS = [
    mc_join_x, mc_x_sees_c, mc_cross_edge, mc_stranger_in_n, mc_lonely_c, mc_shared_n, mc_missing_key, mc_x_in_c,
]


@pytest.mark.parametrize("seed", SEEDS)
def test_multicover_mutation_names_clause(seed):
    rng = np.random.default_rng(seed)
    g, mc, _ = planted_multicover(seed)
    assert verify_multicover(g, mc).ok
    clause, g, mc = MULTICOVER_MUTATIONS[seed % len(MULTICOVER_MUTATIONS)](rng, g, mc)
    verdict = verify_multicover(g, mc)
    assert verdict.failed(clause), verdict.to_json()


# --- Ticks -----------------------------------------------------------------------


def tangent_tick(seed):
    """The planted base edge as a tick, with the multicover shrunk away from it."""
    g, mc, apex = planted_multicover(seed)
    adj = g.adjacency_masks
    other_end = lowest_bit(adj[apex] & mc.C.mask)
    near = 1 << apex | 1 << other_end | adj[apex] | adj[other_end]
    knees = {x: lowest_bit(mc.N[x].mask & adj[apex]) for x in mc.X}
    far = Multicover(mc.X, {x: VertexSet(mc.N[x].mask & ~near) for x in mc.X}, VertexSet(mc.C.mask & ~near))
    return g, Tick(mc.X, apex, knees), far


def tick_apex_sees_x(rng, g, tick, mc):
    return "apex-anticomplete-X", with_edges(g, (tick.apex, pick(rng, tick.X))), tick, mc


def tick_knee_sees_other_x(rng, g, tick, mc):
    x, y = pick_two(rng, tick.X)
    return "knee-anticomplete-X", with_edges(g, (tick.knees[x], y)), tick, mc


def tick_knee_misses_apex(rng, g, tick, mc):
    x = pick(rng, tick.X)
    return "knee-adjacency", without_edge(g, tick.knees[x], tick.apex), tick, mc


def tick_repeated_knee(rng, g, tick, mc):
    x, y = pick_two(rng, tick.X)
    return "distinct", g, Tick(tick.X, tick.apex, {**tick.knees, y: tick.knees[x]}), mc


def tick_touches_base(rng, g, tick, mc):
    return "tangent", with_edges(g, (tick.apex, pick(rng, mc.C))), tick, mc


def tick_other_x(rng, g, tick, mc):
    x = pick(rng, mc.X)
    keep = mc.X - VertexSet.of([x])
    return "X-match", g, tick, Multicover(keep, {y: mc.N[y] for y in keep}, mc.C)


def tick_unknown_apex(rng, g, tick, mc):
    return "vertex-ids", g, Tick(tick.X, g.n, tick.knees), mc


TICK_MUTATIONS = [
    tick_apex_sees_x, tick_knee_sees_other_x, tick_knee_misses_apex, tick_repeated_knee, tick_touches_base,
    tick_other_x, tick_unknown_apex,
]


@pytest.mark.parametrize("seed", SEEDS)
def test_tick_mutation_names_clause(seed):
    rng = np.random.default_rng(seed)
    g, tick, mc = tangent_tick(seed)
    assert verify_multicover(g, mc).ok
    assert verify_tick_tangent(g, tick, mc).ok
    clause, g, tick, mc = TICK_MUTATIONS[seed % len(TICK_MUTATIONS)](rng, g, tick, mc)
    verdict = verify_tick_tangent(g, tick, mc)
    assert verdict.failed(clause), verdict.to_json()


# --- Impressions -----------------------------------------------------------------


def subdivided_square(seed):
    """K_{2,2} impressed on a randomly labelled cycle of length 4 * order, plus spare isolated vertices."""
    rng = np.random.default_rng(seed)
    order = 2 + int(rng.integers(0, 3))
    size = 4 * order
    labels = [int(v) for v in rng.permutation(size + int(rng.integers(0, 3)))]
    ring = labels[:size]
    g = Graph(len(labels), [(ring[i], ring[(i + 1) % size]) for i in range(size)])
    paths = {
        (0, 2): tuple(ring[i] for i in range(0, order + 1)),
        (1, 2): tuple(ring[i] for i in range(2 * order, order - 1, -1)),
        (1, 3): tuple(ring[i] for i in range(2 * order, 3 * order + 1)),
        (0, 3): (ring[0], *(ring[i] for i in range(size - 1, 3 * order - 1, -1))),
    }
    vertex_map = (ring[0], ring[2 * order], ring[order], ring[3 * order])
    return g, Impression(complete_bipartite_pattern(2), vertex_map, paths, order)


def with_path(imp, edge, position, vertex):
    path = list(imp.paths[edge])
    path[position] = vertex
    return replace(imp, paths={**imp.paths, edge: tuple(path)})


def imp_wrong_order(rng, g, imp):
    return "order", g, replace(imp, order=imp.order + 1 + int(rng.integers(0, 3)))


def imp_chord(rng, g, imp):
    a = imp.paths[(0, 2)][1 + int(rng.integers(0, imp.order - 1))]
    b = imp.paths[(1, 3)][1 + int(rng.integers(0, imp.order - 1))]
    return "nonincident-anticomplete", with_edges(g, (a, b)), imp


def imp_branch_edge(rng, g, imp):
    return "branch-stable", with_edges(g, (imp.vertex_map[0], imp.vertex_map[1])), imp


def imp_detour(rng, g, imp):
    g, w = with_isolated(g)
    return "path-edges", g, with_path(imp, (0, 3), 1, w)


def imp_missing_path(rng, g, imp):
    edge = pick(rng, imp.paths)
    return "path-endpoints", g, replace(imp, paths={e: p for e, p in imp.paths.items() if e != edge})


def imp_collapsed_branch(rng, g, imp):
    return "injective", g, replace(imp, vertex_map=(imp.vertex_map[0], imp.vertex_map[0], *imp.vertex_map[2:]))


def imp_shared_vertex(rng, g, imp):
    return "nonincident-disjoint", g, with_path(imp, (1, 3), 1, imp.paths[(0, 2)][1])


def imp_unknown_vertex(rng, g, imp):
    return "vertex-ids", g, with_path(imp, (1, 2), 1, g.n)


IMPRESSION_MUTATIONS = [
    imp_wrong_order, imp_chord, imp_branch_edge, imp_detour, imp_missing_path, imp_collapsed_branch,
    imp_shared_vertex, imp_unknown_vertex,
]


@pytest.mark.parametrize("seed", SEEDS)
def test_impression_mutation_names_clause(seed):
    rng = np.random.default_rng(seed)
    g, imp = subdivided_square(seed)
    assert verify_impression(g, imp).ok
    clause, g, imp = IMPRESSION_MUTATIONS[seed % len(IMPRESSION_MUTATIONS)](rng, g, imp)
    verdict = verify_impression(g, imp)
    assert verdict.failed(clause), verdict.to_json()


# --- Cables ----------------------------------------------------------------------


def cable_lonely_base(rng, g, cable):
    g, w = with_isolated(g)
    return "C1", g, cable.with_base(plus(cable.C, w))


def cable_early_x_sees_late_n(rng, g, cable):
    return "C2", with_edges(g, (pick(rng, cable.X[0]), pick(rng, cable.Y[1]))), cable


def cable_z_complete_to_x(rng, g, cable):
    z = pick(rng, cable.Z[(0, 1)])
    return "C3", with_edges(g, *((z, x) for x in cable.X[1])), cable


def cable_z_sees_later_x(rng, g, cable):
    return "C4", with_edges(g, (pick(rng, cable.Z[(0, 1)]), pick(rng, cable.X[2]))), cable


def cable_neither_type(rng, g, cable):
    return "C5", without_edge(g, pick(rng, cable.X[1]), pick(rng, cable.Y[0])), cable


def cable_wrong_h(rng, g, cable):
    return "X-cliques", g, replace(cable, h=cable.h + 1)


def cable_shared_n(rng, g, cable):
    n0 = plus(cable.N[0], pick(rng, cable.Y[1]))
    return "N-disjoint", g, replace(cable, N=(n0, *cable.N[1:]))


def cable_x_in_base(rng, g, cable):
    return "C-disjoint", g, cable.with_base(plus(cable.C, pick(rng, cable.X[0])))


def cable_short_y(rng, g, cable):
    return "lengths", g, replace(cable, Y=cable.Y[:-1])


CABLE_MUTATIONS = [
    cable_lonely_base, cable_early_x_sees_late_n, cable_z_complete_to_x, cable_z_sees_later_x, cable_neither_type,
    cable_wrong_h, cable_shared_n, cable_x_in_base, cable_short_y,
]


@pytest.mark.parametrize("seed", SEEDS)
def test_cable_mutation_names_clause(seed):
    rng = np.random.default_rng(seed)
    g, cable = gen_planted_cable(1 + seed % 2, 3, PairType.TYPE2, 1 + seed % 3, seed)
    assert verify_cable(g, cable).ok
    clause, g, cable = CABLE_MUTATIONS[seed % len(CABLE_MUTATIONS)](rng, g, cable)
    verdict = verify_cable(g, cable)
    assert verdict.failed(clause), verdict.to_json()
