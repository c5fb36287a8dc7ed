"""Hole search (induced cycles of length at least four) and chordality."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from holebound.graph import Graph, GraphInputError, Hole, SetLike, iter_bits, mask_is_clique, neighbourhood_mask
from holebound.solvers import UNLIMITED, SolverLimits, SolveStatus, _Budget, _OutOfBudget

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HoleResult:
    """Outcome of a hole search; ``hole`` is None when no qualifying hole exists or none was found in budget."""

    status: SolveStatus
    hole: Optional[Hole]
    nodes: int = 0

    @property
    def complete(self) -> bool:
        return self.status is SolveStatus.COMPLETE

    @property
    def length(self) -> Optional[int]:
        return None if self.hole is None else self.hole.length

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "length": self.length,
            "hole": None if self.hole is None else self.hole.to_json(),
            "nodes": self.nodes,
        }


def _closed(adj: tuple[int, ...], v: int) -> int:
    return adj[v] | 1 << v


def _component_of(adj: tuple[int, ...], v: int, mask: int) -> int:
    comp = frontier = 1 << v
    while frontier:
        frontier = neighbourhood_mask(adj, frontier) & mask & ~comp
        comp |= frontier
    return comp


def _search(adj: tuple[int, ...], within: int, ell: int, budget: _Budget) -> Optional[list[int]]:
    """First induced cycle of length >= ``ell`` inside ``within``.

    Each cycle is generated once: it starts at its lowest vertex ``s`` and its
    second vertex is smaller than its last.
    """
    for s in iter_bits(within):
        above = within & ~((1 << (s + 1)) - 1)
        if (above.bit_count() + 1) < ell:
            break
        s_nbrs = adj[s] & above
        for v1 in iter_bits(s_nbrs):
            closers = s_nbrs & ~((1 << (v1 + 1)) - 1)
            if not closers:
                continue
            found = _extend(adj, s, [s, v1], above & ~(1 << v1), 0, closers, ell, budget)
            if found is not None:
                return found
    return None


def _extend(
    adj: tuple[int, ...],
    s: int,
    path: list[int],
    free: int,
    blocked: int,
    closers: int,
    ell: int,
    budget: _Budget,
) -> Optional[list[int]]:
    """Extends the induced path ``path``.

    ``free`` holds unused vertices above ``s``; ``blocked`` is the closed
    neighbourhood of the path vertices strictly between ``s`` and the last one.
    """
    budget.tick()
    last = path[-1]
    avail = free & ~blocked
    # Remaining vertices lie in the component of ``last`` and the cycle closes on a neighbour of s.
    reach = _component_of(adj, last, avail | 1 << last)
    if len(path) - 1 + reach.bit_count() < ell or not reach & closers:
        return None
    grown = blocked | _closed(adj, last)
    for u in iter_bits(adj[last] & avail):
        if adj[u] >> s & 1:
            if len(path) >= 3 and closers >> u & 1 and len(path) + 1 >= ell:
                return path + [u]
            continue
        found = _extend(adj, s, path + [u], free & ~(1 << u), grown, closers, ell, budget)
        if found is not None:
            return found
    return None


def _ambient(graph: Graph, within: Optional[SetLike]) -> int:
    return graph.all_mask if within is None else graph.check_set(within)


def find_hole_at_least(
    graph: Graph,
    ell: int,
    limits: SolverLimits = UNLIMITED,
    *,
    within: Optional[SetLike] = None,
) -> HoleResult:
    """An induced cycle of length at least ``ell`` (inside ``G[within]`` when given)."""
    if ell < 4:
        raise GraphInputError(f"hole length threshold must be at least 4, got {ell}")
    budget = _Budget(limits)
    try:
        cycle = _search(graph.adjacency_masks, _ambient(graph, within), ell, budget)
    except _OutOfBudget:
        logger.warning("hole search (ell=%d) budget exhausted after %d nodes", ell, budget.nodes)
        return HoleResult(SolveStatus.BUDGET_EXHAUSTED, None, budget.nodes)
    return HoleResult(SolveStatus.COMPLETE, None if cycle is None else Hole(tuple(cycle)), budget.nodes)


def longest_hole(
    graph: Graph,
    limits: SolverLimits = UNLIMITED,
    *,
    within: Optional[SetLike] = None,
) -> HoleResult:
    """Longest induced cycle; an exhausted result carries the longest hole found so far."""
    adj = graph.adjacency_masks
    mask = _ambient(graph, within)
    budget = _Budget(limits)
    best: Optional[list[int]] = None
    try:
        while True:
            threshold = 4 if best is None else len(best) + 1
            cycle = _search(adj, mask, threshold, budget)
            if cycle is None:
                break
            best = cycle
    except _OutOfBudget:
        logger.warning("longest hole budget exhausted after %d nodes (best=%s)", budget.nodes, best and len(best))
        return HoleResult(SolveStatus.BUDGET_EXHAUSTED, None if best is None else Hole(tuple(best)), budget.nodes)
    return HoleResult(SolveStatus.COMPLETE, None if best is None else Hole(tuple(best)), budget.nodes)


def maximum_cardinality_order(graph: Graph) -> list[int]:
    """Maximum cardinality search visit order, ties by lowest id."""
    adj = graph.adjacency_masks
    weight = [0] * graph.n
    unvisited = graph.all_mask
    order = []
    while unvisited:
        v = max(iter_bits(unvisited), key=lambda u: (weight[u], -u))
        order.append(v)
        unvisited &= ~(1 << v)
        for u in iter_bits(adj[v] & unvisited):
            weight[u] += 1
    return order


def is_chordal(graph: Graph) -> bool:
    """True iff the reverse of a maximum cardinality search order is a perfect elimination ordering."""
    adj = graph.adjacency_masks
    visited = 0
    for v in maximum_cardinality_order(graph):
        if not mask_is_clique(adj, adj[v] & visited):
            return False
        visited |= 1 << v
    return True
