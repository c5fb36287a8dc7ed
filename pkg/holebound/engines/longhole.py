"""Layered decomposition: either colour G with 2(ell-3)(kappa+tau)+1 colours or exhibit a hole of length >= ell."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from holebound.certificates import hole_defect
from holebound.engines.transcript import EngineContext, EngineTranscript, PreconditionViolation
from holebound.graph import (
    Coloring,
    Graph,
    Hole,
    VertexSet,
    component_masks,
    distance_layers,
    iter_bits,
    n2,
    shortest_path,
)
from holebound.solvers import UNLIMITED, SolverLimits, SubsetChromaticCache

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecompositionResult:
    """Exactly one of ``coloring`` and ``hole`` is set."""

    bound: int
    coloring: Optional[Coloring]
    hole: Optional[Hole]
    transcript: EngineTranscript

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "coloring": None if self.coloring is None else self.coloring.to_json(),
            "hole": None if self.hole is None else self.hole.to_json(),
            "transcript": self.transcript.to_json(),
        }


def decomposition_bound(ell: int, kappa: int, tau: int) -> int:
    return 2 * (ell - 3) * (kappa + tau) + 1


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def check_local_bounds(ctx: EngineContext, kappa: int, tau: int) -> None:
    """chi(N^1(v)) <= kappa and chi(N^2(v)) <= tau for every vertex."""
    graph = ctx.graph
    adj = graph.adjacency_masks
    for v in graph.vertices:
        first = adj[v]
        if first.bit_count() > kappa and ctx.chi(f"N1({v})", VertexSet(first)) > kappa:
            ctx.require("kappa", False, f"chi(N1({v})) exceeds {kappa}", [v])
        second = n2(graph, [v])
        if len(second) > tau and ctx.chi(f"N2({v})", second) > tau:
            ctx.require("tau", False, f"chi(N2({v})) exceeds {tau}", [v])
    ctx.verified("kappa", f"checked on all {graph.n} vertices")
    ctx.verified("tau", f"checked on all {graph.n} vertices")


def longhole_decompose(
    graph: Graph,
    ell: int,
    kappa: int,
    tau: int,
    limits: SolverLimits = UNLIMITED,
    *,
    cache: Optional[SubsetChromaticCache] = None,
    check_preconditions: bool = True,
) -> DecompositionResult:
    """BFS layering from the lowest vertex of each component.

    Every component of every layer is coloured optimally, even layers from one palette
    and odd layers from another. A layer component whose chromatic number exceeds
    (ell-3)(kappa+tau) is instead grown into a hole of length at least ``ell``.
    """
    if ell < 4:
        raise PreconditionViolation("ell", f"hole length bound must be at least 4, got {ell}")
    if kappa < 0 or tau < 0:
        raise PreconditionViolation("parameters", "kappa and tau must be nonnegative")
    ctx = EngineContext(graph, "longhole", limits, cache)
    if check_preconditions:
        check_local_bounds(ctx, kappa, tau)
    else:
        ctx.assumed("kappa")
        ctx.assumed("tau")
    ctx.assumed("no-long-hole", f"no hole of length >= {ell}; a hole is returned otherwise")

    t = ell - 3
    palette = t * (kappa + tau)
    offset = max(palette, 1)
    bound = decomposition_bound(ell, kappa, tau)
    adj = graph.adjacency_masks

    comps = component_masks(adj, graph.all_mask)
    comp_chi = {comp: ctx.chi(f"component[{_lowest(comp)}]", VertexSet(comp)) for comp in comps}
    comps.sort(key=lambda comp: (-comp_chi[comp], _lowest(comp)))

    colour: dict[int, int] = {}
    for comp in comps:
        root = _lowest(comp)
        layers = [layer.mask for layer in distance_layers(graph, root, within=VertexSet(comp))]
        ctx.step("layers", {"root": root}, {"layers": len(layers), "component": comp.bit_count()}, {"component": comp_chi[comp]})
        colour[root] = 0
        for k in range(1, len(layers)):
            for piece in component_masks(adj, layers[k]):
                value = ctx.chi(f"L{k}[{_lowest(piece)}]", VertexSet(piece))
                if value > palette:
                    hole = _grow_hole(ctx, layers, k, piece, value, t, kappa, tau, ell)
                    ctx.finish("hole", hole.to_json())
                    return DecompositionResult(bound, None, hole, ctx.transcript)
                local = ctx.color(f"colour L{k}[{_lowest(piece)}]", VertexSet(piece))
                base = (k % 2) * offset
                for v, c in local.assignment.items():
                    colour[v] = base + c

    used = sorted(set(colour.values()))
    remap = {c: i for i, c in enumerate(used)}
    coloring = Coloring({v: remap[c] for v, c in sorted(colour.items())}, len(used))
    ctx.step("palettes", sizes={"colours": coloring.num_colors, "bound": bound})
    ctx.finish("coloring", coloring.to_json())
    return DecompositionResult(bound, coloring, None, ctx.transcript)


def _grow_hole(
    ctx: EngineContext,
    layers: list[int],
    k: int,
    c0: int,
    chi0: int,
    t: int,
    kappa: int,
    tau: int,
    ell: int,
) -> Hole:
    """Grows the induced path v_0 - ... - v_t into the layer component ``c0`` and closes it into a hole."""
    graph = ctx.graph
    adj = graph.adjacency_masks
    previous = layers[k - 1]
    starters = [v for v in iter_bits(previous) if adj[v] & c0]
    v0 = starters[0]
    ctx.step("start", {"layer": k, "v0": v0}, {"C0": c0.bit_count()}, {"C0": chi0})

    path = [v0]
    current = c0
    current_chi = chi0
    for i in range(t):
        vi = path[-1]
        near = adj[vi] & current
        rest = current & ~near
        pieces = component_masks(adj, rest)
        if not pieces:
            raise ctx.falsify("path-growth", f"step {i}: removing N({vi}) empties C_{i}", [vi])
        best, best_chi = 0, -1
        for piece in pieces:
            value = ctx.chi(f"C{i + 1}[{_lowest(piece)}]", VertexSet(piece))
            if value > best_chi:
                best, best_chi = piece, value
        threshold = (t - i - 1) * kappa + t * tau
        if best_chi <= threshold:
            raise ctx.falsify(
                "path-growth",
                f"chi(C_{i + 1}) = {best_chi} does not exceed {threshold}",
                [vi, _lowest(best)],
            )
        nxt = [u for u in iter_bits(near) if adj[u] & best]
        if not nxt:
            raise ctx.falsify("path-growth", f"no neighbour of {vi} in C_{i} sees C_{i + 1}", [vi])
        path.append(nxt[0])
        current, current_chi = best, best_chi
        ctx.step("grow", {"v": nxt[0]}, {"C": best.bit_count()}, {"C": best_chi})

    far = current
    for vi in path[:-1]:
        far &= ~n2(graph, [vi]).mask
    if not far:
        raise ctx.falsify("far-vertex", f"every vertex of C_t lies in some N2(v_i), chi(C_t) = {current_chi}", path)
    v = _lowest(far)
    u = next(w for w in iter_bits(previous) if adj[w] >> v & 1)
    p = shortest_path(graph, u, path[-1], VertexSet(current))
    lower = 0
    for layer in layers[: k - 1]:
        lower |= layer
    q = shortest_path(graph, u, v0, VertexSet(lower))
    if p is None or q is None:
        raise ctx.falsify("closing-paths", f"no closing path through u={u}", [u, v])
    cycle = q + path[1:] + p[::-1][1:-1]
    ctx.step("close", {"v": v, "u": u, "P": p, "Q": q}, {"hole": len(cycle)})
    if len(cycle) < 4 or len(set(cycle)) != len(cycle):
        raise ctx.falsify("hole", f"closing walk {cycle} is not a cycle", cycle)
    hole = Hole(tuple(cycle))
    defect = hole_defect(graph, hole, ell)
    if defect is not None:
        raise ctx.falsify("hole", defect, cycle)
    logger.info("longhole found hole of length %d (ell=%d)", hole.length, ell)
    return hole
