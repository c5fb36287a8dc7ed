"""Seeded graph generators: G(n, p), random chordal graphs, and planted cables and ticks.

Every draw goes through ``numpy.random.default_rng(seed)``; the same arguments give the
same graph, vertex numbering included.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Union

import numpy as np

from holebound.graph import Graph, GraphInputError, VertexSet
from holebound.structures import Cable, Multicover, PairType

logger = logging.getLogger(__name__)

PairTypes = Union[PairType, Mapping[tuple[int, int], PairType]]


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi sample: each pair independently with probability ``p``, pairs in lexicographic order."""
    if n < 0:
        raise GraphInputError(f"vertex count must be nonnegative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise GraphInputError(f"edge probability must lie in [0, 1], got {p}")
    pairs = list(combinations(range(n), 2))
    draws = _rng(seed).random(len(pairs))
    return Graph(n, [pair for pair, u in zip(pairs, draws) if u < p])


def gen_chordal(n: int, width: int, seed: int) -> Graph:
    """Random chordal graph built backwards along a perfect elimination ordering.

    Vertex ``i`` of the construction attaches to a parent ``u < i`` and to part of the
    parent's earlier neighbourhood, which is a clique; so every vertex's earlier
    neighbourhood is a clique of size at most ``width`` and omega <= width + 1.
    The construction order is then hidden by a random relabelling.
    """
    if not 1 <= width <= n:
        raise GraphInputError(f"chordal width must satisfy 1 <= width <= n, got width={width}, n={n}")
    rng = _rng(seed)
    back: list[list[int]] = [[]]
    edges: list[tuple[int, int]] = []
    for i in range(1, n):
        parent = int(rng.integers(0, i))
        room = min(width - 1, len(back[parent]))
        size = int(rng.integers(0, room + 1))
        chosen = [int(v) for v in rng.choice(back[parent], size=size, replace=False)] if size else []
        earlier = sorted([parent, *chosen])
        back.append(earlier)
        edges.extend((u, i) for u in earlier)
    relabel = rng.permutation(n)
    return Graph(n, [(int(relabel[u]), int(relabel[v])) for u, v in edges])


class _Builder:
    """Accumulates vertices and edges, then renumbers them with a random permutation."""

    def __init__(self) -> None:
        self.n = 0
        self.edges: set[tuple[int, int]] = set()

    def add(self, count: int) -> list[int]:
        fresh = list(range(self.n, self.n + count))
        self.n += count
        return fresh

    def join(self, u: int, v: int) -> None:
        self.edges.add((min(u, v), max(u, v)))

    def complete(self, a: list[int], b: list[int]) -> None:
        for u in a:
            for v in b:
                self.join(u, v)

    def clique(self, vertices: list[int]) -> None:
        for u, v in combinations(vertices, 2):
            self.join(u, v)

    def finish(self, rng: np.random.Generator) -> tuple[Graph, list[int]]:
        relabel = [int(v) for v in rng.permutation(self.n)]
        graph = Graph(self.n, [(relabel[u], relabel[v]) for u, v in sorted(self.edges)])
        return graph, relabel


def _pair_types(t: int, types: PairTypes) -> dict[tuple[int, int], PairType]:
    pairs = list(combinations(range(t), 2))
    if isinstance(types, PairType):
        return {pair: types for pair in pairs}
    matrix = {}
    for pair, kind in types.items():
        if pair not in pairs:
            raise GraphInputError(f"type matrix key {pair} is not a pair i < j < {t}")
        try:
            matrix[pair] = PairType(kind)
        except ValueError:
            raise GraphInputError(f"pair {pair} has unknown type {kind!r}") from None
    missing = [pair for pair in pairs if pair not in matrix]
    if missing:
        raise GraphInputError(f"type matrix has no entry for pairs {missing}")
    return matrix


def gen_planted_cable(h: int, t: int, types: PairTypes, base_chi_target: int, seed: int) -> tuple[Graph, Cable]:
    """A graph with a planted h-cable of length ``t`` realising the requested pair types.

    The base is a disjoint union of cliques, the largest of size ``base_chi_target``.
    Each Y_i covers the base, each N_i is stable, and a type-2 pair (i, j) joins X_j
    completely to Y_i and plants Z_{i,j} anticomplete to X_j but covering N_j.
    """
    if h < 1:
        raise GraphInputError(f"clique size h must be at least 1, got {h}")
    if t < 0 or base_chi_target < 0:
        raise GraphInputError("cable length and base chromatic target must be nonnegative")
    matrix = _pair_types(t, types)
    rng = _rng(seed)
    b = _Builder()

    base_cliques: list[list[int]] = []
    if base_chi_target:
        base_cliques.append(b.add(base_chi_target))
        for _ in range(int(rng.integers(0, 3))):
            base_cliques.append(b.add(int(rng.integers(1, base_chi_target + 1))))
    for group in base_cliques:
        b.clique(group)
    base = [v for group in base_cliques for v in group]

    X = [b.add(h) for _ in range(t)]
    Y = [b.add(int(rng.integers(1, 3))) for _ in range(t)]
    Z: dict[tuple[int, int], list[int]] = {}
    for (i, j), kind in matrix.items():
        if kind is PairType.TYPE2:
            Z[(i, j)] = b.add(int(rng.integers(1, 3)))
    N = [Y[i] + [v for j in range(i + 1, t) for v in Z.get((i, j), [])] for i in range(t)]

    for i in range(t):
        b.clique(X[i])
        b.complete(X[i], N[i])
        for c in base:
            b.join(c, Y[i][int(rng.integers(0, len(Y[i])))])
        for y in Y[i]:
            # an unused y still needs to see the base when it has any
            if base and not any((min(y, c), max(y, c)) in b.edges for c in base):
                b.join(y, base[int(rng.integers(0, len(base)))])
    for (i, j), kind in matrix.items():
        if kind is not PairType.TYPE2:
            continue
        b.complete(X[j], Y[i])
        for v in N[j]:
            b.join(v, Z[(i, j)][int(rng.integers(0, len(Z[(i, j)])))])

    graph, relabel = b.finish(rng)

    def vs(vertices: list[int]) -> VertexSet:
        return VertexSet.of(relabel[v] for v in vertices)

    cable = Cable(
        h=h,
        X=tuple(vs(x) for x in X),
        N=tuple(vs(n) for n in N),
        Y=tuple(vs(y) for y in Y),
        Z={pair: vs(part) for pair, part in sorted(Z.items())},
        C=vs(base),
    )
    logger.debug("planted cable h=%d t=%d n=%d base=%d", h, t, graph.n, len(base))
    return graph, cable


@dataclass(frozen=True)
class PlantedTicks:
    """A stable multicover on which ``rounds`` ticks can be grown, with the planted apexes."""

    graph: Graph
    multicover: Multicover
    apexes: tuple[int, ...]


def _planted_ticks(rounds: int, x_count: int, tail: int, seed: int) -> PlantedTicks:
    if rounds < 1 or x_count < 1 or tail < 1:
        raise GraphInputError("rounds, |X| and the tail size must be positive")
    rng = _rng(seed)
    b = _Builder()
    xs = b.add(x_count)
    pairs = [b.add(2) for _ in range(rounds)]
    stable_tail = b.add(tail)
    N: dict[int, list[int]] = {}
    for x in xs:
        own = []
        for a, c in pairs:
            p, q = b.add(2)
            b.join(p, a)
            b.join(q, c)
            own += [p, q]
        (r,) = b.add(1)
        b.complete([r], stable_tail)
        own.append(r)
        b.complete([x], own)
        N[x] = own
    for a, c in pairs:
        b.join(a, c)
    graph, relabel = b.finish(rng)
    mc = Multicover(
        X=VertexSet.of(relabel[x] for x in xs),
        N={relabel[x]: VertexSet.of(relabel[v] for v in N[x]) for x in xs},
        C=VertexSet.of(relabel[v] for v in [*(v for pair in pairs for v in pair), *stable_tail]),
    )
    return PlantedTicks(graph, mc, tuple(min(relabel[a], relabel[c]) for a, c in pairs))


def gen_planted_tick_multicover(x_count: int, tail: int, seed: int) -> PlantedTicks:
    """Triangle-free stable multicover whose base holds one edge, so one tick grows at j = 1."""
    return _planted_ticks(1, x_count, tail, seed)


def gen_planted_tick_cluster(n: int, seed: int, tail: int = 2) -> PlantedTicks:
    """Stable multicover on |X| = n with ``n`` disjoint base edges; each round of the cluster uses one."""
    return _planted_ticks(n, n, tail, seed)
