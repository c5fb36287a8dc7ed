"""Graph core: immutable bitset graphs, vertex sets, certificates and the elementary predicates.

Vertex ids are dense integers ``0..n-1``. A vertex set is an ``int`` bitmask wrapped
in :class:`VertexSet`; solvers work on the raw masks, public functions accept any
iterable of ids.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Union


class GraphInputError(ValueError):
    """Raised when a vertex id, edge list or vertex set is invalid for a graph."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yields the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; ``mask`` must be nonzero."""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        try:
            v = operator.index(v)
        except TypeError:
            raise GraphInputError(f"vertex id must be an integer, got {v!r}") from None
        if v < 0:
            raise GraphInputError(f"vertex id must be nonnegative, got {v}")
        mask |= 1 << v
    return mask


@dataclass(frozen=True, slots=True)
class VertexSet:
    """An immutable set of vertex ids backed by a bitmask."""

    mask: int = 0

    def __post_init__(self) -> None:
        if self.mask < 0:
            raise GraphInputError("vertex set mask must be nonnegative")

    @classmethod
    def of(cls, vertices: Iterable[int]) -> VertexSet:
        return cls(mask_of(vertices))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask | other.mask)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask & other.mask)

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.mask & ~other.mask)

    def isdisjoint(self, other: VertexSet) -> bool:
        return not self.mask & other.mask

    def issubset(self, other: VertexSet) -> bool:
        return not self.mask & ~other.mask

    def min(self) -> int:
        if not self.mask:
            raise GraphInputError("min() of an empty vertex set")
        return lowest_bit(self.mask)

    def to_json(self) -> list[int]:
        return list(self)

    @classmethod
    def from_json(cls, data: Iterable[int]) -> VertexSet:
        return cls.of(data)

    def __repr__(self) -> str:
        return f"VertexSet({{{', '.join(map(str, self))}}})"


SetLike = Union[VertexSet, Iterable[int]]


def as_vertex_set(vertices: SetLike) -> VertexSet:
    if isinstance(vertices, VertexSet):
        return vertices
    return VertexSet.of(vertices)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    Adjacency is stored as one bitmask per vertex, so ``has_edge`` is O(1) and
    neighbourhood intersections are single integer operations.
    """

    __slots__ = ("_n", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        n = operator.index(n)
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        for edge in edges:
            u, v = (operator.index(e) for e in edge)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)
        self._hash: Optional[int] = None

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> Graph:
        """Builds a graph from per-vertex neighbour masks, checking symmetry."""
        adj = tuple(masks)
        n = len(adj)
        for v, m in enumerate(adj):
            if m >> n or m >> v & 1:
                raise GraphInputError(f"neighbour mask of vertex {v} is out of range or has a loop")
            for u in iter_bits(m):
                if not adj[u] >> v & 1:
                    raise GraphInputError(f"adjacency is not symmetric at ({v}, {u})")
        graph = cls.__new__(cls)
        graph._n = n
        graph._adj = adj
        graph._hash = None
        return graph

    @property
    def n(self) -> int:
        return self._n

    @property
    def all_mask(self) -> int:
        return (1 << self._n) - 1

    @property
    def vertices(self) -> VertexSet:
        return VertexSet(self.all_mask)

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj

    def neighbour_mask(self, v: int) -> int:
        self._check_vertex(v)
        return self._adj[v]

    def neighbours(self, v: int) -> VertexSet:
        return VertexSet(self.neighbour_mask(v))

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.neighbour_mask(v).bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, m in enumerate(self._adj):
            for v in iter_bits(m >> (u + 1)):
                yield (u, u + 1 + v)

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    def check_set(self, vertices: SetLike) -> int:
        """Returns the mask of ``vertices`` after checking every id is a vertex."""
        mask = as_vertex_set(vertices).mask
        if mask >> self._n:
            bad = next(iter_bits(mask >> self._n)) + self._n
            raise GraphInputError(f"vertex {bad} is not a vertex of a graph with n={self._n}")
        return mask

    def _check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self._n):
            raise GraphInputError(f"vertex {v!r} is not a vertex of a graph with n={self._n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._adj)
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.num_edges})"


@dataclass(frozen=True)
class Coloring:
    """A proper-colouring certificate: vertex -> colour index in ``range(num_colors)``."""

    assignment: Mapping[int, int]
    num_colors: int

    def color_classes(self) -> list[VertexSet]:
        classes = [0] * self.num_colors
        for v, c in self.assignment.items():
            classes[c] |= 1 << v
        return [VertexSet(m) for m in classes]

    def lifted(self, relabel: tuple[int, ...]) -> Coloring:
        """Maps a colouring of an induced subgraph back to parent-graph ids."""
        return Coloring({relabel[v]: c for v, c in self.assignment.items()}, self.num_colors)

    def to_json(self) -> dict:
        return {
            "assignment": {str(v): c for v, c in sorted(self.assignment.items())},
            "num_colors": self.num_colors,
        }

    @classmethod
    def from_json(cls, data: dict) -> Coloring:
        return cls(
            assignment={int(v): int(c) for v, c in data["assignment"].items()},
            num_colors=int(data["num_colors"]),
        )


@dataclass(frozen=True)
class Hole:
    """An induced-cycle certificate given as a cyclic vertex sequence."""

    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if len(self.cycle) < 4:
            raise GraphInputError(f"a hole has at least 4 vertices, got {len(self.cycle)}")
        if len(set(self.cycle)) != len(self.cycle):
            raise GraphInputError("hole vertices must be distinct")

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def vertices(self) -> VertexSet:
        return VertexSet.of(self.cycle)

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "length": self.length}

    @classmethod
    def from_json(cls, data: dict) -> Hole:
        return cls(tuple(int(v) for v in data["cycle"]))


# --- Subgraphs -----------------------------------------------------------------


def induced_subgraph(graph: Graph, vertices: SetLike) -> tuple[Graph, tuple[int, ...]]:
    """Returns ``G[X]`` relabelled to ``0..|X|-1`` and the map new id -> parent id."""
    mask = graph.check_set(vertices)
    relabel = tuple(iter_bits(mask))
    position = {v: i for i, v in enumerate(relabel)}
    adj = graph.adjacency_masks
    masks = []
    for v in relabel:
        m = 0
        for u in iter_bits(adj[v] & mask):
            m |= 1 << position[u]
        masks.append(m)
    return Graph.from_masks(masks), relabel


# --- Relational predicates -----------------------------------------------------


def _disjoint_pair(graph: Graph, x: SetLike, y: SetLike) -> tuple[int, int]:
    xm, ym = graph.check_set(x), graph.check_set(y)
    if xm & ym:
        raise GraphInputError(f"sets must be disjoint, both contain {lowest_bit(xm & ym)}")
    return xm, ym


def is_complete_between(graph: Graph, x: SetLike, y: SetLike) -> bool:
    xm, ym = _disjoint_pair(graph, x, y)
    adj = graph.adjacency_masks
    return all(adj[v] & ym == ym for v in iter_bits(xm))


def is_anticomplete_between(graph: Graph, x: SetLike, y: SetLike) -> bool:
    xm, ym = _disjoint_pair(graph, x, y)
    adj = graph.adjacency_masks
    return not any(adj[v] & ym for v in iter_bits(xm))


def covers(graph: Graph, x: SetLike, y: SetLike) -> bool:
    """True iff every vertex of ``y`` has a neighbour in ``x``."""
    xm, ym = _disjoint_pair(graph, x, y)
    adj = graph.adjacency_masks
    return all(adj[v] & xm for v in iter_bits(ym))


def mask_is_clique(adj: tuple[int, ...], mask: int) -> bool:
    return all(adj[v] & mask == mask & ~(1 << v) for v in iter_bits(mask))


def mask_is_stable(adj: tuple[int, ...], mask: int) -> bool:
    return not any(adj[v] & mask for v in iter_bits(mask))


def is_clique(graph: Graph, x: SetLike) -> bool:
    return mask_is_clique(graph.adjacency_masks, graph.check_set(x))


def is_stable(graph: Graph, x: SetLike) -> bool:
    return mask_is_stable(graph.adjacency_masks, graph.check_set(x))


def common_neighbours_mask(adj: tuple[int, ...], mask: int, within: int) -> int:
    """Vertices of ``within`` outside ``mask`` that are complete to ``mask``."""
    result = within & ~mask
    for v in iter_bits(mask):
        result &= adj[v]
    return result


def neighbourhood_mask(adj: tuple[int, ...], mask: int) -> int:
    """Union of the open neighbourhoods of the vertices of ``mask``."""
    result = 0
    for v in iter_bits(mask):
        result |= adj[v]
    return result


def _clique_mask(graph: Graph, x: SetLike, within: Optional[SetLike]) -> tuple[int, int]:
    xm = graph.check_set(x)
    wm = graph.all_mask if within is None else graph.check_set(within)
    if xm & ~wm:
        raise GraphInputError("clique must lie inside the ambient vertex set")
    if not mask_is_clique(graph.adjacency_masks, xm):
        raise GraphInputError(f"{VertexSet(xm)!r} is not a clique")
    return xm, wm


def n1(graph: Graph, x: SetLike, *, within: Optional[SetLike] = None) -> VertexSet:
    """N^1(X): vertices outside the clique X complete to X (in ``G[within]`` if given)."""
    xm, wm = _clique_mask(graph, x, within)
    return VertexSet(common_neighbours_mask(graph.adjacency_masks, xm, wm))


def n2(graph: Graph, x: SetLike, *, within: Optional[SetLike] = None) -> VertexSet:
    """N^2(X): vertices with a neighbour in N^1(X) and no neighbour in X."""
    xm, wm = _clique_mask(graph, x, within)
    adj = graph.adjacency_masks
    first = common_neighbours_mask(adj, xm, wm)
    return VertexSet(neighbourhood_mask(adj, first) & wm & ~xm & ~first & ~neighbourhood_mask(adj, xm))


# --- Traversal -----------------------------------------------------------------


def distance_layers(graph: Graph, z0: int, *, within: Optional[SetLike] = None) -> list[VertexSet]:
    """BFS layers L_0 = {z0}, L_1, ... of the component of ``z0``."""
    wm = graph.all_mask if within is None else graph.check_set(within)
    graph.check_set([z0])
    if not wm >> z0 & 1:
        raise GraphInputError(f"root {z0} is outside the ambient vertex set")
    adj = graph.adjacency_masks
    seen = frontier = 1 << z0
    layers = [VertexSet(frontier)]
    while True:
        nxt = neighbourhood_mask(adj, frontier) & wm & ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(VertexSet(nxt))
        frontier = nxt


def component_masks(adj: tuple[int, ...], mask: int) -> list[int]:
    """Connected components of the subgraph induced on ``mask``, by lowest vertex."""
    comps = []
    remaining = mask
    while remaining:
        comp = frontier = remaining & -remaining
        while frontier:
            frontier = neighbourhood_mask(adj, frontier) & remaining & ~comp
            comp |= frontier
        comps.append(comp)
        remaining &= ~comp
    return comps


def components(graph: Graph, within: Optional[SetLike] = None) -> list[VertexSet]:
    wm = graph.all_mask if within is None else graph.check_set(within)
    return [VertexSet(m) for m in component_masks(graph.adjacency_masks, wm)]


def shortest_path(graph: Graph, source: int, target: int, within: SetLike) -> Optional[list[int]]:
    """A shortest ``source``-``target`` path inside ``G[within]``; such a path is induced there.

    Parents are assigned in ascending id order, so the result is deterministic.
    """
    wm = graph.check_set(within) | graph.check_set([source, target])
    adj = graph.adjacency_masks
    parent = {source: source}
    frontier = [source]
    seen = 1 << source
    while frontier and target not in parent:
        nxt = []
        for v in frontier:
            for u in iter_bits(adj[v] & wm & ~seen):
                seen |= 1 << u
                parent[u] = v
                nxt.append(u)
        frontier = sorted(nxt)
    if target not in parent:
        return None
    path = [target]
    while path[-1] != source:
        path.append(parent[path[-1]])
    return path[::-1]
