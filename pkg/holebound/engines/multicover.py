"""Multicover engines: stabilising a multicover, growing ticks, tick clusters, and the impression they give."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from holebound.bounds import BoundExpr, const, digit_budget, gettick_constants, mul, power
from holebound.engines.transcript import (
    EngineContext,
    EngineOutcome,
    EngineTranscript,
    HypothesisStatus,
    PreconditionViolation,
    best_fibre,
)
from holebound.graph import Graph, VertexSet, iter_bits, lowest_bit
from holebound.holes import find_hole_at_least
from holebound.solvers import (
    UNLIMITED,
    BudgetExhaustedError,
    SolverLimits,
    SubsetChromaticCache,
    degeneracy_order_and_coloring,
    iter_clique_masks,
)
from holebound.structures import (
    Impression,
    Multicover,
    Tick,
    complete_bipartite_pattern,
    complete_bipartite_side,
    verify_containment,
    verify_impression,
    verify_multicover,
    verify_tick_tangent,
)

logger = logging.getLogger(__name__)

# Thresholds past this many digits exceed any chromatic number an engine can meet.
THRESHOLD_DIGITS = 64


def _exact(expr: BoundExpr) -> Optional[int]:
    return expr.value if expr.exact else None


def _reaches(value: int, expr: BoundExpr) -> bool:
    return expr.exact and value >= expr.value


def _exceeds(value: int, expr: BoundExpr) -> bool:
    return expr.exact and value > expr.value


def _verdict_message(verdict) -> str:
    return "; ".join(f"{v.clause}: {v.message}" for v in verdict.violations[:3])


# --- Stable multicovers ----------------------------------------------------------


def stabilize_multicover(
    graph: Graph,
    mc: Multicover,
    kappa: int,
    limits: SolverLimits = UNLIMITED,
    *,
    cache: Optional[SubsetChromaticCache] = None,
) -> EngineOutcome:
    """Colours each N_x with at most ``kappa`` colours and keeps the most expensive fingerprint fibre of C.

    The fingerprint of v records, for each x, the lowest colour among v's neighbours in N_x.
    """
    ctx = EngineContext(graph, "stabilize", limits, cache)
    verdict = verify_multicover(graph, mc)
    ctx.require("multicover", verdict.ok, _verdict_message(verdict), verdict.violations[0].witness if verdict.violations else ())
    result = _stabilize(ctx, mc, kappa)
    ctx.finish("multicover", result.to_json())
    return EngineOutcome("multicover", result, ctx.transcript)


def _stabilize(ctx: EngineContext, mc: Multicover, kappa: int) -> Multicover:
    graph = ctx.graph
    adj = graph.adjacency_masks
    xs = sorted(mc.X)
    classes: dict[int, list[int]] = {}
    for x in xs:
        coloring = ctx.color(f"N_{x}", mc.N[x])
        ctx.require("kappa", coloring.num_colors <= kappa, f"chi(N_{x}) = {coloring.num_colors} exceeds {kappa}", [x])
        masks = [0] * coloring.num_colors
        for v, colour in coloring.assignment.items():
            masks[colour] |= 1 << v
        classes[x] = masks

    fibres: dict[tuple[int, ...], int] = {}
    for v in mc.C:
        key = []
        for x in xs:
            seen = adj[v] & mc.N[x].mask
            key.append(min(i for i, cls in enumerate(classes[x]) if cls & seen))
        fibres[tuple(key)] = fibres.get(tuple(key), 0) | 1 << v
    if fibres:
        f, c_mask, c_chi = best_fibre(ctx, "fibre", fibres)
    else:
        f, c_mask, c_chi = tuple(0 for _ in xs), 0, 0
    ctx.step("fingerprint", {"f": list(f)}, {"fibres": len(fibres), "C'": c_mask.bit_count()}, {"C'": c_chi})

    total = ctx.chi("C", mc.C)
    if c_chi * kappa ** len(xs) < total:
        raise ctx.falsify("fibre-bound", f"chi(C') = {c_chi} is below chi(C) / kappa^|X| = {total} / {kappa}^{len(xs)}")

    stable = Multicover(
        X=mc.X,
        N={x: VertexSet(classes[x][f[i]] if f[i] < len(classes[x]) else 0) for i, x in enumerate(xs)},
        C=VertexSet(c_mask),
    )
    verdict = verify_multicover(graph, stable, require_stable_N=True)
    if not verdict.ok:
        raise ctx.falsify("stable-multicover", _verdict_message(verdict))
    return stable


# --- Ticks -----------------------------------------------------------------------


@dataclass(frozen=True)
class TickResult:
    multicover: Multicover
    tick: Tick
    transcript: EngineTranscript

    def to_json(self) -> dict:
        return {
            "multicover": self.multicover.to_json(),
            "tick": self.tick.to_json(),
            "transcript": self.transcript.to_json(),
        }


def grow_tick(
    graph: Graph,
    mc: Multicover,
    j: int,
    k: int,
    m: int,
    c: int,
    kappa: int,
    limits: SolverLimits = UNLIMITED,
    *,
    cache: Optional[SubsetChromaticCache] = None,
    strict: bool = False,
) -> TickResult:
    """A multicover contained in ``mc`` with |X'| >= m and chi(C') >= c, and a tick tangent to it.

    The size and chromatic thresholds m_j, c_j of the input are recorded as verified or
    unmet; only ``strict`` runs reject on them.
    """
    ctx = EngineContext(graph, "grow_tick", limits, cache, strict)
    result_mc, tick = _grow_tick(ctx, mc, j, k, m, c, kappa)
    ctx.finish("tick", {"multicover": result_mc.to_json(), "tick": tick.to_json()})
    return TickResult(result_mc, tick, ctx.transcript)


def _targets_met(ctx: EngineContext) -> bool:
    hyps = ctx.transcript.hypotheses
    return all(hyps.get(name, (HypothesisStatus.VIOLATED, ""))[0] is HypothesisStatus.VERIFIED for name in ("X-size", "C-chi"))


def _shortfall(ctx: EngineContext, clause: str, message: str) -> Exception:
    """A step that the thresholds guarantee came up empty."""
    if _targets_met(ctx):
        return ctx.falsify(clause, message)
    logger.info("engine=%s shortfall clause=%s: %s", ctx.transcript.engine, clause, message)
    return PreconditionViolation("targets", f"{clause}: {message} (input thresholds unmet)")


def _grow_tick(
    ctx: EngineContext,
    mc: Multicover,
    j: int,
    k: int,
    m: int,
    c: int,
    kappa: int,
) -> tuple[Multicover, Tick]:
    graph = ctx.graph
    adj = graph.adjacency_masks
    if j <= 0:
        ctx.require("vacuous", False, "m_0=c_0=1, theorem vacuous")
    if k < 2:
        ctx.require("vacuous", False, f"k = {k} < 2, theorem vacuous")
    verdict = verify_multicover(graph, mc, require_stable_N=True)
    ctx.require("stable-multicover", verdict.ok, _verdict_message(verdict))
    ctx.require("omega", ctx.omega("G", graph.vertices) <= k, f"omega(G) exceeds {k}")
    union = mc.union_of_n()
    ctx.require("omega-N", ctx.omega("union N", union) <= j, f"omega(union of N_x) exceeds {j}")

    with digit_budget(THRESHOLD_DIGITS):
        level = gettick_constants(j, k, m, c, kappa)
        below = gettick_constants(j - 1, k, m, c, kappa)
        step2 = mul(below.c_j, power(2, level.m_j))
    m_prev = _exact(below.m_j)
    chi_c = ctx.chi("C", mc.C)
    ctx.target("X-size", _reaches(len(mc.X), level.m_j), f"|X| = {len(mc.X)} is below m_{j}")
    ctx.target("C-chi", _reaches(chi_c, level.c_j), f"chi(C) = {chi_c} is below c_{j}")

    xs = sorted(mc.X)
    m_j = _exact(level.m_j)
    if m_j is not None and len(xs) > m_j:
        xs = xs[:m_j]
    N = {x: mc.N[x].mask for x in xs}

    # clique A and the part C_0 of C that sees none of it
    a_clique = next(iter_clique_masks(adj, mc.C.mask, k), None)
    if a_clique is None:
        raise _shortfall(ctx, "clique-A", f"C has no {k}-clique")
    for a in iter_bits(a_clique):
        value = ctx.chi(f"N({a})", VertexSet(adj[a]))
        ctx.require("kappa", value <= kappa, f"chi(N({a})) = {value} exceeds {kappa}", [a])
    seen_a = 0
    for a in iter_bits(a_clique):
        seen_a |= adj[a]
    c0 = mc.C.mask & ~a_clique & ~seen_a
    ctx.step("clique", {"A": VertexSet(a_clique)}, {"C0": c0.bit_count()}, {"C0": ctx.chi("C0", VertexSet(c0))})

    # (1): a in A and X_1 such that every v in C_1 sees, in each N_x, a vertex missed by a
    fibres: dict[tuple[int, tuple[int, ...]], int] = {}
    for v in iter_bits(c0):
        best: Optional[tuple[int, tuple[int, ...]]] = None
        for a in iter_bits(a_clique):
            free = tuple(x for x in xs if adj[v] & N[x] & ~adj[a])
            if best is None or len(free) > len(best[1]):
                best = (a, free)
        fibres[best] = fibres.get(best, 0) | 1 << v
    if not fibres:
        raise _shortfall(ctx, "step-1", "C_0 is empty")
    (a, x1), c1, chi1 = best_fibre(ctx, "C1", fibres)
    if not x1:
        raise _shortfall(ctx, "step-1", "no x in X leaves a vertex of N_x unseen by any apex candidate")
    ctx.step("apex", {"a": a, "X1": list(x1)}, {"X1": len(x1), "C1": c1.bit_count()}, {"C1": chi1})

    knee = {}
    for x in x1:
        hit = N[x] & adj[a]
        if not hit:
            raise ctx.falsify("knee", f"N_{x} does not cover the apex {a}", [x, a])
        knee[x] = lowest_bit(hit)

    def witness(x: int, v: int) -> int:
        return lowest_bit(N[x] & adj[v] & ~adj[a])

    c2 = c1
    for x in x1:
        c2 &= ~adj[knee[x]]
    ctx.step("knees", {"knees": {x: knee[x] for x in x1}}, {"C2": c2.bit_count()}, {"C2": ctx.chi("C2", VertexSet(c2))})

    # (2): the sets C_y; an expensive one sends the construction down to j - 1
    hits: dict[int, dict[int, list[int]]] = {}
    for v in iter_bits(c2):
        hits[v] = {y: [x for x in x1 if x != y and adj[witness(x, v)] >> knee[y] & 1] for y in x1}
    c_y: dict[int, int] = {}
    for y in x1:
        mask = 0
        if m_prev is not None:
            for v in iter_bits(c2):
                if len(hits[v][y]) >= m_prev:
                    mask |= 1 << v
        c_y[y] = mask
        if mask and _exceeds(ctx.chi(f"C_y[{y}]", VertexSet(mask)), step2):
            ctx.step("descend", {"y": y, "a_y": knee[y]}, {"C_y": mask.bit_count()})
            return _descend(ctx, mc, y, knee[y], mask, hits, m_prev, N, j, k, m, c, kappa)

    # (3): stable sets of the digraphs G_v
    c_rest = c2
    for mask in c_y.values():
        c_rest &= ~mask
    index = {x: i for i, x in enumerate(x1)}
    fibres3: dict[tuple[int, ...], int] = {}
    for v in iter_bits(c_rest):
        arcs = [(index[x], index[y]) for y in x1 for x in hits[v][y]]
        digraph = Graph(len(x1), {tuple(sorted(e)) for e in arcs})
        classes = degeneracy_order_and_coloring(digraph).coloring.color_classes()
        largest = max(classes, key=len) if classes else VertexSet(0)
        key = tuple(x1[i] for i in sorted(largest))
        fibres3[key] = fibres3.get(key, 0) | 1 << v
    if not fibres3:
        raise _shortfall(ctx, "step-3", "every vertex of C_2 lies in some C_y")
    x3, c3, chi3 = best_fibre(ctx, "C3", fibres3)
    ctx.step("stable-digraph", {"X3": list(x3)}, {"X3": len(x3), "C3": c3.bit_count()}, {"C3": chi3})

    if len(x3) < m or chi3 < c:
        raise _shortfall(ctx, "targets", f"|X'| = {len(x3)}, chi(C') = {chi3} against targets m = {m}, c = {c}")

    tick_vertices = 1 << a
    avoid = adj[a]
    for y in x3:
        tick_vertices |= 1 << knee[y]
        avoid |= adj[knee[y]]
    inner = Multicover(
        X=VertexSet.of(x3),
        N={x: VertexSet(N[x] & ~avoid & ~tick_vertices) for x in x3},
        C=VertexSet(c3),
    )
    tick = Tick(X=VertexSet.of(x3), apex=a, knees={x: knee[x] for x in x3})
    for name, check in (
        ("containment", verify_containment(mc, inner)),
        ("multicover-out", verify_multicover(graph, inner, require_stable_N=True)),
        ("tangent", verify_tick_tangent(graph, tick, inner)),
    ):
        if not check.ok:
            raise ctx.falsify(name, _verdict_message(check), [*check.violations[0].witness])
    logger.info("grow_tick j=%d produced tick apex=%d on |X'|=%d chi(C')=%d", j, a, len(x3), chi3)
    return inner, tick


def _descend(
    ctx: EngineContext,
    mc: Multicover,
    y: int,
    a_y: int,
    c_y: int,
    hits: dict[int, dict[int, list[int]]],
    m_prev: int,
    N: dict[int, int],
    j: int,
    k: int,
    m: int,
    c: int,
    kappa: int,
) -> tuple[Multicover, Tick]:
    """Every N'_x below sees a_y, so the union loses a clique size and the lemma applies at j - 1."""
    adj = ctx.graph.adjacency_masks
    fibres: dict[tuple[int, ...], int] = {}
    for v in iter_bits(c_y):
        key = tuple(hits[v][y][:m_prev])
        fibres[key] = fibres.get(key, 0) | 1 << v
    x_prime, c_prime, _ = best_fibre(ctx, "descend", fibres)
    lower = Multicover(
        X=VertexSet.of(x_prime),
        N={x: VertexSet(N[x] & adj[a_y]) for x in x_prime},
        C=VertexSet(c_prime),
    )
    return _grow_tick(ctx.child("grow_tick"), lower, j - 1, k, m, c, kappa)


# --- Tick clusters and impressions -----------------------------------------------


@dataclass(frozen=True)
class TickCluster:
    """``n`` ticks on a common X' with |X'| = n, tangent to ``multicover``."""

    ticks: tuple[Tick, ...]
    multicover: Multicover
    transcript: EngineTranscript

    def to_json(self) -> dict:
        return {
            "ticks": [t.to_json() for t in self.ticks],
            "multicover": self.multicover.to_json(),
            "transcript": self.transcript.to_json(),
        }


def cluster_targets(n: int, k: int, kappa: int) -> list[tuple[BoundExpr, BoundExpr]]:
    """(m, c) targets of each of the ``n`` rounds; the last round aims at (n, 1)."""
    targets: list[tuple[BoundExpr, BoundExpr]] = []
    with digit_budget(THRESHOLD_DIGITS):
        need = (const(n), const(1))
        for _ in range(n):
            targets.append(need)
            level = gettick_constants(k, k, need[0], need[1], kappa)
            need = (level.m_j, level.c_j)
    targets.reverse()
    return targets


def build_tick_cluster(
    graph: Graph,
    mc: Multicover,
    n: int,
    k: int,
    kappa: int,
    limits: SolverLimits = UNLIMITED,
    *,
    cache: Optional[SubsetChromaticCache] = None,
    strict: bool = False,
) -> TickCluster:
    """Repeated grow_tick with j = k, each round on the multicover the previous one returned."""
    if n < 1:
        raise PreconditionViolation("n", f"cluster size must be positive, got {n}")
    ctx = EngineContext(graph, "tick_cluster", limits, cache, strict)
    targets = cluster_targets(n, k, kappa)
    current = mc
    ticks: list[Tick] = []
    for r, (m_r, c_r) in enumerate(targets):
        # lenient runs only ask each round to keep enough for the cluster
        m_goal = m_r.value if strict and m_r.exact else n
        c_goal = c_r.value if strict and c_r.exact else 1
        sub = ctx.child("grow_tick")
        try:
            current, tick = _grow_tick(sub, current, k, k, m_goal, c_goal, kappa)
        except PreconditionViolation as exc:
            raise PreconditionViolation(exc.clause, f"round {r}: {exc.message}", exc.witness) from exc
        ticks.append(tick)
        ctx.step("round", {"round": r, "apex": tick.apex}, {"X": len(current.X), "C": len(current.C)})

    x_final = sorted(current.X)[:n]
    ctx.require("cluster-size", len(x_final) == n, f"final X has {len(x_final)} < {n} vertices")
    keep = VertexSet.of(x_final)
    restricted = tuple(Tick(keep, t.apex, {x: t.knees[x] for x in x_final}) for t in ticks)
    final_mc = current.restrict(keep)
    ctx.finish("cluster", {"ticks": [t.to_json() for t in restricted], "multicover": final_mc.to_json()})
    return TickCluster(restricted, final_mc, ctx.transcript)


def _cluster_defect(graph: Graph, ticks: Sequence[Tick]) -> Optional[str]:
    adj = graph.adjacency_masks
    outside = [t.vertices_outside_x().mask for t in ticks]
    for i in range(len(ticks)):
        for j in range(i + 1, len(ticks)):
            if outside[i] & outside[j]:
                return f"ticks {i} and {j} share {lowest_bit(outside[i] & outside[j])} outside X'"
            for v in iter_bits(outside[i]):
                if adj[v] & outside[j]:
                    return f"tick {i} vertex {v} is adjacent to tick {j} outside X'"
    return None


def ticks_to_impression(
    graph: Graph,
    ticks: Sequence[Tick],
    mc: Multicover,
    limits: SolverLimits = UNLIMITED,
) -> EngineOutcome:
    """K_{n,n} of order two: X' on one side, the apexes on the other, paths x - a_x - a."""
    ctx = EngineContext(graph, "ticks_to_impression", limits)
    n = len(ticks)
    ctx.require("cluster-shape", n >= 1, "no ticks given")
    shared = ticks[0].X
    ctx.require(
        "cluster-shape",
        all(t.X == shared for t in ticks) and len(shared) == n,
        f"{n} ticks must share one X' of size {n}",
    )
    for i, t in enumerate(ticks):
        verdict = verify_tick_tangent(graph, t, mc)
        ctx.require("tangent", verdict.ok, f"tick {i}: {_verdict_message(verdict)}", [t.apex])
    defect = _cluster_defect(graph, ticks)
    ctx.require("cluster-disjoint", defect is None, defect or "")

    xs = sorted(shared)
    paths = {}
    for i, x in enumerate(xs):
        for j, t in enumerate(ticks):
            paths[(i, n + j)] = (x, t.knees[x], t.apex)
    imp = Impression(
        pattern=complete_bipartite_pattern(n),
        vertex_map=tuple(xs) + tuple(t.apex for t in ticks),
        paths=paths,
        order=2,
    )
    verdict = verify_impression(graph, imp)
    if not verdict.ok:
        raise ctx.falsify("impression", _verdict_message(verdict))
    ctx.step("impression", {"side": xs, "apexes": [t.apex for t in ticks]}, {"n": n})
    ctx.finish("impression", imp.to_json())
    return EngineOutcome("impression", imp, ctx.transcript)


def impression_to_hole(graph: Graph, imp: Impression, limits: SolverLimits = UNLIMITED) -> EngineOutcome:
    """A hole of length >= 2n inside the vertex union of an impression of K_{n,n}, by restricted search."""
    ctx = EngineContext(graph, "impression_to_hole", limits)
    verdict = verify_impression(graph, imp)
    ctx.require("impression", verdict.ok, _verdict_message(verdict))
    n = complete_bipartite_side(imp.pattern)
    ctx.require("pattern", n is not None and n >= 2, "pattern must be K_{n,n} with n >= 2")
    union = imp.vertices()
    result = find_hole_at_least(graph, 2 * n, limits, within=union)
    if not result.complete:
        raise BudgetExhaustedError(f"hole search in impression of K_{n},{n} not settled")
    ctx.step("search", {"within": union}, {"union": len(union), "min_length": 2 * n, "nodes": result.nodes})
    if result.hole is None:
        raise ctx.falsify("hole-search", f"no hole of length >= {2 * n} inside the impression", list(union))
    ctx.finish("hole", result.hole.to_json())
    return EngineOutcome("hole", result.hole, ctx.transcript)
