"""Independent certificate checks.

These use nothing but ``Graph.has_edge`` so that a bug in the bitset solvers cannot
hide behind the same bug in the checker.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from holebound.graph import Coloring, Graph, Hole


def coloring_defect(graph: Graph, coloring: Coloring, vertices: Optional[Iterable[int]] = None) -> Optional[str]:
    """Returns a description of the first defect of ``coloring`` or None if it is proper.

    ``vertices`` defaults to the whole graph; every listed vertex must be coloured.
    """
    targets = range(graph.n) if vertices is None else sorted(vertices)
    assignment = coloring.assignment
    for v in targets:
        if v not in assignment:
            return f"vertex {v} is uncoloured"
        c = assignment[v]
        if not (isinstance(c, int) and 0 <= c < coloring.num_colors):
            return f"vertex {v} has colour {c!r} outside range({coloring.num_colors})"
    for u, v in combinations(targets, 2):
        if assignment[u] == assignment[v] and graph.has_edge(u, v):
            return f"edge {u}-{v} is monochromatic (colour {assignment[u]})"
    return None


def is_proper_coloring(graph: Graph, coloring: Coloring, vertices: Optional[Iterable[int]] = None) -> bool:
    return coloring_defect(graph, coloring, vertices) is None


def hole_defect(graph: Graph, hole: Hole, min_length: int = 4) -> Optional[str]:
    cycle = hole.cycle
    k = len(cycle)
    if k < max(4, min_length):
        return f"length {k} is below {max(4, min_length)}"
    for v in cycle:
        if not 0 <= v < graph.n:
            return f"vertex {v} is not in the graph"
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            adjacent = graph.has_edge(cycle[i], cycle[j])
            if consecutive and not adjacent:
                return f"consecutive vertices {cycle[i]}-{cycle[j]} are not adjacent"
            if not consecutive and adjacent:
                return f"chord {cycle[i]}-{cycle[j]}"
    return None


def is_induced_hole(graph: Graph, hole: Hole, min_length: int = 4) -> bool:
    return hole_defect(graph, hole, min_length) is None


def is_clique_certificate(graph: Graph, vertices: Iterable[int]) -> bool:
    members = sorted(set(vertices))
    if any(not 0 <= v < graph.n for v in members):
        return False
    return all(graph.has_edge(u, v) for u, v in combinations(members, 2))
