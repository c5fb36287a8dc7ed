"""Exact solvers: clique number, chromatic number, subset chromatic numbers with memoisation,
degeneracy colourings and the search for a clique whose second neighbourhood is expensive.

Every solver works on raw adjacency bitmasks restricted to a vertex mask, so "the
chromatic number of X" never needs an explicit induced subgraph.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from holebound.graph import (
    Coloring,
    Graph,
    GraphInputError,
    SetLike,
    VertexSet,
    common_neighbours_mask,
    component_masks,
    iter_bits,
    neighbourhood_mask,
)

logger = logging.getLogger(__name__)

DEFAULT_MEMO_ENTRIES = int(os.environ.get("HOLEBOUND_MEMO_ENTRIES", "100000"))
_TIME_CHECK_INTERVAL = 256


class BudgetExhaustedError(RuntimeError):
    """Raised when a scalar-valued solver call runs out of budget; keeps the known bounds."""

    def __init__(self, message: str, lower: Optional[int] = None, upper: Optional[int] = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class SolveStatus(Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class SolverLimits:
    """Search budgets; ``None`` means unlimited."""

    node_budget: Optional[int] = None
    time_budget: Optional[float] = None

    def __post_init__(self) -> None:
        if self.node_budget is not None and self.node_budget < 0:
            raise ValueError("node_budget must be nonnegative")
        if self.time_budget is not None and self.time_budget < 0:
            raise ValueError("time_budget must be nonnegative")

    def to_json(self) -> dict:
        return {"node_budget": self.node_budget, "time_budget": self.time_budget}

    @classmethod
    def from_json(cls, data: dict) -> SolverLimits:
        return cls(node_budget=data.get("node_budget"), time_budget=data.get("time_budget"))


UNLIMITED = SolverLimits()


class _OutOfBudget(Exception):
    pass


class _Budget:
    __slots__ = ("nodes", "_node_budget", "_deadline")

    def __init__(self, limits: SolverLimits) -> None:
        self.nodes = 0
        self._node_budget = limits.node_budget
        self._deadline = None if limits.time_budget is None else time.monotonic() + limits.time_budget

    def tick(self) -> None:
        self.nodes += 1
        if self._node_budget is not None and self.nodes > self._node_budget:
            raise _OutOfBudget
        if self._deadline is not None and self.nodes % _TIME_CHECK_INTERVAL == 0:
            if time.monotonic() > self._deadline:
                raise _OutOfBudget


# --- Results ---------------------------------------------------------------------


@dataclass(frozen=True)
class CliqueResult:
    status: SolveStatus
    size: int
    witness: VertexSet
    nodes: int = 0

    @property
    def complete(self) -> bool:
        return self.status is SolveStatus.COMPLETE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "size": self.size,
            "witness": self.witness.to_json(),
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class ColoringResult:
    """Exact chromatic number with certificate, or the bounds known when the budget ran out."""

    status: SolveStatus
    chi: Optional[int]
    coloring: Coloring
    lower: int
    upper: int
    nodes: int = 0

    @property
    def complete(self) -> bool:
        return self.status is SolveStatus.COMPLETE

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "chi": self.chi,
            "lower": self.lower,
            "upper": self.upper,
            "coloring": self.coloring.to_json(),
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class DegeneracyResult:
    order: tuple[int, ...]
    coloring: Coloring
    degeneracy: int


# --- Maximum clique --------------------------------------------------------------


def _color_sort(adj: tuple[int, ...], p: int) -> tuple[list[int], list[int]]:
    """Greedy colour classes of ``p``; returns vertices with their colour number as a bound."""
    order: list[int] = []
    bounds: list[int] = []
    colour = 0
    uncoloured = p
    while uncoloured:
        colour += 1
        q = uncoloured
        while q:
            low = q & -q
            v = low.bit_length() - 1
            uncoloured &= ~low
            q &= ~low & ~adj[v]
            order.append(v)
            bounds.append(colour)
    return order, bounds


def _max_clique(adj: tuple[int, ...], mask: int, budget: _Budget, best: list[int]) -> None:
    """Branch and bound with colouring bounds; ``best`` holds [size, mask] and survives exhaustion."""

    def expand(r_mask: int, r_size: int, p: int) -> None:
        budget.tick()
        order, bounds = _color_sort(adj, p)
        for idx in range(len(order) - 1, -1, -1):
            if r_size + bounds[idx] <= best[0]:
                return
            v = order[idx]
            bit = 1 << v
            new_p = p & adj[v]
            if new_p:
                expand(r_mask | bit, r_size + 1, new_p)
            elif r_size + 1 > best[0]:
                best[0], best[1] = r_size + 1, r_mask | bit
            p &= ~bit

    if mask:
        expand(0, 0, mask)


def omega(graph: Graph, limits: SolverLimits = UNLIMITED, *, within: Optional[SetLike] = None) -> CliqueResult:
    """Clique number with a witness clique (of ``G[within]`` when given)."""
    mask = graph.all_mask if within is None else graph.check_set(within)
    budget = _Budget(limits)
    best = [0, 0]
    try:
        _max_clique(graph.adjacency_masks, mask, budget, best)
    except _OutOfBudget:
        logger.warning("omega budget exhausted after %d nodes (best=%d)", budget.nodes, best[0])
        return CliqueResult(SolveStatus.BUDGET_EXHAUSTED, best[0], VertexSet(best[1]), budget.nodes)
    return CliqueResult(SolveStatus.COMPLETE, best[0], VertexSet(best[1]), budget.nodes)


# --- Chromatic number ------------------------------------------------------------


def _dsatur_greedy(adj: tuple[int, ...], mask: int) -> tuple[dict[int, int], int]:
    """DSATUR greedy colouring; ties by degree inside ``mask`` then lowest id."""
    colour: dict[int, int] = {}
    classes: list[int] = []
    degree = {v: (adj[v] & mask).bit_count() for v in iter_bits(mask)}
    uncoloured = mask
    while uncoloured:
        best_v, best_key = -1, (-1, -1)
        for v in iter_bits(uncoloured):
            sat = sum(1 for cls in classes if adj[v] & cls)
            key = (sat, degree[v])
            if key > best_key:
                best_v, best_key = v, key
        nv = adj[best_v]
        for c, cls in enumerate(classes):
            if not nv & cls:
                break
        else:
            c = len(classes)
            classes.append(0)
        classes[c] |= 1 << best_v
        colour[best_v] = c
        uncoloured &= ~(1 << best_v)
    return colour, len(classes)


def _k_colourable(
    adj: tuple[int, ...], mask: int, k: int, clique: int, budget: _Budget
) -> Optional[dict[int, int]]:
    """DSATUR backtracking for a ``k``-colouring with ``clique`` precoloured 0..|clique|-1."""
    classes = [0] * k
    colour: dict[int, int] = {}
    for c, v in enumerate(iter_bits(clique)):
        classes[c] |= 1 << v
        colour[v] = c
    degree = {v: (adj[v] & mask).bit_count() for v in iter_bits(mask)}

    def search(uncoloured: int, used: int) -> bool:
        budget.tick()
        if not uncoloured:
            return True
        best_v, best_key = -1, (-1, -1)
        for v in iter_bits(uncoloured):
            nv = adj[v]
            sat = 0
            for c in range(used):
                if nv & classes[c]:
                    sat += 1
            if sat == k:
                return False
            key = (sat, degree[v])
            if key > best_key:
                best_v, best_key = v, key
        nv = adj[best_v]
        bit = 1 << best_v
        for c in range(min(used + 1, k)):
            if nv & classes[c]:
                continue
            classes[c] |= bit
            colour[best_v] = c
            if search(uncoloured & ~bit, max(used, c + 1)):
                return True
            classes[c] &= ~bit
        colour.pop(best_v, None)
        return False

    if search(mask & ~clique, clique.bit_count()):
        return colour
    return None


@dataclass
class _ChromaticProgress:
    lower: int = 0
    upper: int = 0
    colour: dict[int, int] = field(default_factory=dict)


def _chromatic_on_mask(adj: tuple[int, ...], mask: int, budget: _Budget, progress: _ChromaticProgress) -> int:
    """Exact chromatic number of ``G[mask]``; components are solved independently.

    ``progress`` always holds a valid colouring and proven bounds, even mid-search.
    """
    comps = []
    for comp in component_masks(adj, mask):
        greedy, ub = _dsatur_greedy(adj, comp)
        comps.append((ub, comp, greedy))
        progress.colour.update(greedy)
    # Largest greedy bound first; components whose greedy bound cannot raise the
    # maximum are never searched.
    comps.sort(key=lambda item: (-item[0], item[1] & -item[1]))
    progress.upper = max((ub for ub, _, _ in comps), default=0)
    progress.lower = 0
    for idx, (ub, comp, _) in enumerate(comps):
        if ub <= progress.lower:
            break
        best = [0, 0]
        _max_clique(adj, comp, budget, best)
        lower = best[0]
        progress.lower = max(progress.lower, lower)
        chi = ub
        for k in range(lower, ub):
            found = _k_colourable(adj, comp, k, best[1], budget)
            if found is not None:
                progress.colour.update(found)
                chi = k
                break
            progress.lower = max(progress.lower, k + 1)
        progress.lower = max(progress.lower, chi)
        rest = max((u for u, _, _ in comps[idx + 1:]), default=0)
        progress.upper = max(progress.lower, rest)
    progress.upper = progress.lower
    return progress.lower


def _normalised(colour: dict[int, int]) -> Coloring:
    remap: dict[int, int] = {}
    assignment = {}
    for v in sorted(colour):
        c = colour[v]
        if c not in remap:
            remap[c] = len(remap)
        assignment[v] = remap[c]
    return Coloring(assignment, len(remap))


def color_subset(graph: Graph, vertices: SetLike, limits: SolverLimits = UNLIMITED) -> ColoringResult:
    """Optimal colouring of ``G[X]`` expressed in ``G``'s vertex ids."""
    mask = graph.check_set(vertices)
    budget = _Budget(limits)
    progress = _ChromaticProgress()
    try:
        chi = _chromatic_on_mask(graph.adjacency_masks, mask, budget, progress)
    except _OutOfBudget:
        logger.warning(
            "chromatic budget exhausted after %d nodes (lower=%d upper=%d)",
            budget.nodes,
            progress.lower,
            progress.upper,
        )
        return ColoringResult(
            SolveStatus.BUDGET_EXHAUSTED,
            None,
            _normalised(progress.colour),
            progress.lower,
            progress.upper,
            budget.nodes,
        )
    return ColoringResult(SolveStatus.COMPLETE, chi, _normalised(progress.colour), chi, chi, budget.nodes)


def chromatic_number(graph: Graph, limits: SolverLimits = UNLIMITED) -> ColoringResult:
    return color_subset(graph, graph.vertices, limits)


# --- Memoised subset chromatic numbers -------------------------------------------


class SubsetChromaticCache:
    """Least-recently-used cache of exact chromatic numbers keyed by (graph, subset mask)."""

    def __init__(self, capacity: int = DEFAULT_MEMO_ENTRIES) -> None:
        self.capacity = capacity
        self._entries: OrderedDict[tuple[Graph, int], int] = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, graph: Graph, mask: int) -> Optional[int]:
        with self._lock:
            value = self._entries.get((graph, mask))
            if value is None:
                self.misses += 1
                return None
            self._entries.move_to_end((graph, mask))
            self.hits += 1
            return value

    def put(self, graph: Graph, mask: int, value: int) -> None:
        if self.capacity <= 0:
            return
        with self._lock:
            self._entries[(graph, mask)] = value
            self._entries.move_to_end((graph, mask))
            while len(self._entries) > self.capacity:
                self._entries.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        return len(self._entries)


default_cache = SubsetChromaticCache()


def chi_of_subset(
    graph: Graph,
    vertices: SetLike,
    limits: SolverLimits = UNLIMITED,
    cache: Optional[SubsetChromaticCache] = None,
) -> int:
    """chi(G[X]), memoised; raises BudgetExhaustedError carrying the known bounds."""
    mask = graph.check_set(vertices)
    if mask.bit_count() <= 1:
        return mask.bit_count()
    cache = default_cache if cache is None else cache
    cached = cache.get(graph, mask)
    if cached is not None:
        return cached
    result = color_subset(graph, VertexSet(mask), limits)
    if not result.complete:
        raise BudgetExhaustedError(
            f"chromatic number of a {mask.bit_count()}-vertex subset not settled",
            lower=result.lower,
            upper=result.upper,
        )
    cache.put(graph, mask, result.chi)
    return result.chi


# --- Degeneracy ------------------------------------------------------------------


def degeneracy_order_and_coloring(graph: Graph) -> DegeneracyResult:
    """Smallest-last order and the greedy colouring along it (at most degeneracy+1 colours)."""
    adj = graph.adjacency_masks
    degree = [m.bit_count() for m in adj]
    remaining = graph.all_mask
    removal: list[int] = []
    degeneracy = 0
    while remaining:
        v = min(iter_bits(remaining), key=lambda u: (degree[u], u))
        degeneracy = max(degeneracy, degree[v])
        removal.append(v)
        remaining &= ~(1 << v)
        for u in iter_bits(adj[v] & remaining):
            degree[u] -= 1
    order = tuple(reversed(removal))
    colour: dict[int, int] = {}
    for v in order:
        taken = {colour[u] for u in iter_bits(adj[v]) if u in colour}
        c = 0
        while c in taken:
            c += 1
        colour[v] = c
    num_colors = max(colour.values()) + 1 if colour else 0
    return DegeneracyResult(order, Coloring(colour, num_colors), degeneracy)


# --- Cliques with an expensive second neighbourhood ------------------------------


def iter_clique_masks(adj: tuple[int, ...], mask: int, h: int) -> Iterator[int]:
    """All ``h``-cliques inside ``mask`` in lexicographic order of their sorted vertices."""

    def extend(chosen: int, size: int, candidates: int) -> Iterator[int]:
        if size == h:
            yield chosen
            return
        while candidates and candidates.bit_count() >= h - size:
            low = candidates & -candidates
            v = low.bit_length() - 1
            candidates ^= low
            yield from extend(chosen | low, size + 1, candidates & adj[v])

    yield from extend(0, 0, mask)


def second_neighbourhood_mask(adj: tuple[int, ...], clique: int, within: int) -> int:
    first = common_neighbours_mask(adj, clique, within)
    return neighbourhood_mask(adj, first) & within & ~clique & ~first & ~neighbourhood_mask(adj, clique)


def find_clique_with_large_n2(
    graph: Graph,
    h: int,
    n: int,
    limits: SolverLimits = UNLIMITED,
    *,
    within: Optional[SetLike] = None,
    cache: Optional[SubsetChromaticCache] = None,
) -> Optional[VertexSet]:
    """First ``h``-clique X (lexicographically) of ``G[within]`` with chi(N^2(X)) > n, or None."""
    if h < 1:
        raise GraphInputError(f"clique size must be at least 1, got {h}")
    if n < 0:
        raise GraphInputError(f"threshold must be nonnegative, got {n}")
    wm = graph.all_mask if within is None else graph.check_set(within)
    adj = graph.adjacency_masks
    for clique in iter_clique_masks(adj, wm, h):
        second = second_neighbourhood_mask(adj, clique, wm)
        if second.bit_count() <= n:
            continue
        if chi_of_subset(graph, VertexSet(second), limits, cache) > n:
            return VertexSet(clique)
    return None
