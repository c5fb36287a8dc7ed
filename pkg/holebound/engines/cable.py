"""Cable engines: growing a cable by one clique, and using type-1 and type-2 cables."""

from __future__ import annotations

import logging
from typing import Callable, Optional

from holebound.bounds import phi1, ramsey_upper
from holebound.certificates import hole_defect
from holebound.engines.ramsey import monochromatic_subset
from holebound.engines.transcript import EngineContext, EngineOutcome, HypothesisStatus, PreconditionViolation, best_fibre
from holebound.graph import Graph, Hole, VertexSet, common_neighbours_mask, iter_bits, lowest_bit, n2
from holebound.solvers import (
    UNLIMITED,
    SolverLimits,
    SubsetChromaticCache,
    find_clique_with_large_n2,
    second_neighbourhood_mask,
)
from holebound.structures import Cable, Multicover, PairType, cable_pair_type, verify_cable, verify_multicover

logger = logging.getLogger(__name__)


def _require_cable(ctx: EngineContext, cable: Cable) -> None:
    verdict = verify_cable(ctx.graph, cable)
    detail = "" if verdict.ok else f"{verdict.violations[0].clause}: {verdict.violations[0].message}"
    ctx.require("cable", verdict.ok, detail, verdict.violations[0].witness if verdict.violations else ())


def _require_type(ctx: EngineContext, cable: Cable, kind: PairType) -> None:
    for i in range(cable.length):
        for j in range(i + 1, cable.length):
            found = cable_pair_type(ctx.graph, cable, i, j, verified=True)
            if found is not kind:
                ctx.require("pair-type", False, f"pair ({i}, {j}) is {found.value}, expected {kind.value}", [i, j])
    ctx.verified("pair-type", f"all pairs {kind.value}")


# --- Type 1 ----------------------------------------------------------------------


def type1_extract_multicover(
    graph: Graph,
    cable: Cable,
    m: int,
    limits: SolverLimits = UNLIMITED,
    *,
    strict: bool = False,
) -> EngineOutcome:
    """A multicover of the base with |X| = m, one vertex x_j of X_j per chosen position.

    f(i, j) is the lowest r whose r-th member of X_j sees nothing of Y_i; a
    monochromatic m-subset I fixes r, and (x_j, Y_j) for j in I is the multicover.
    """
    ctx = EngineContext(graph, "type1", limits, strict=strict)
    if m < 1:
        raise PreconditionViolation("m", f"multicover size must be positive, got {m}")
    _require_cable(ctx, cable)
    _require_type(ctx, cable, PairType.TYPE1)
    t = cable.length
    needed = ramsey_upper(cable.h, m)
    ctx.target("length", needed.exact and t >= needed.value, f"length {t} is below the Ramsey bound for h={cable.h}, m={m}")

    adj = graph.adjacency_masks
    members = [sorted(x) for x in cable.X]
    colours: dict[tuple[int, int], int] = {}
    for i in range(t):
        for j in range(i + 1, t):
            y_i = cable.Y[i].mask
            colours[(i, j)] = next(r for r, x in enumerate(members[j]) if not adj[x] & y_i)
    ctx.step("colour-pairs", {"f": [{"i": i, "j": j, "r": r} for (i, j), r in sorted(colours.items())]}, {"pairs": len(colours)})

    picked = monochromatic_subset(colours, t, m)
    if picked is None:
        if ctx.transcript.hypotheses["length"][0] is HypothesisStatus.VERIFIED:
            raise ctx.falsify("ramsey", f"no monochromatic {m}-subset among {t} positions")
        raise PreconditionViolation("length", f"no monochromatic {m}-subset among {t} positions")
    r = colours[(picked[0], picked[1])] if len(picked) > 1 else 0
    xs = {members[j][r]: cable.Y[j] for j in picked}
    mc = Multicover(X=VertexSet.of(xs), N=xs, C=cable.C)
    ctx.step("multicover", {"I": list(picked), "r": r}, {"X": len(xs)})
    verdict = verify_multicover(graph, mc)
    if not verdict.ok:
        first = verdict.violations[0]
        raise ctx.falsify(first.clause, first.message, first.witness)
    ctx.finish("multicover", mc.to_json())
    return EngineOutcome("multicover", mc, ctx.transcript)


# --- Type 2 ----------------------------------------------------------------------


def type2_construct_hole(
    graph: Graph,
    cable: Cable,
    tau: int,
    limits: SolverLimits = UNLIMITED,
    *,
    cache: Optional[SubsetChromaticCache] = None,
    strict: bool = False,
) -> EngineOutcome:
    """Hole v - x_1 - z_1 - ... - z_t - x_t - v of length exactly t + 3 from a type-2 cable of length t >= 2."""
    ctx = EngineContext(graph, "type2", limits, cache, strict)
    t = cable.length
    ell = t + 3
    if t < 2:
        raise PreconditionViolation("length", f"type-2 hole construction needs length >= 2 (ell >= 5), got {t}")
    _require_cable(ctx, cable)
    _require_type(ctx, cable, PairType.TYPE2)
    chi_c = ctx.chi("C", cable.C)
    ctx.target("C-chi", chi_c > t * tau, f"chi(C) = {chi_c} does not exceed {t}*{tau}")

    adj = graph.adjacency_masks
    X = [x.mask for x in cable.X]
    Y = [y.mask for y in cable.Y]
    last = t - 1
    if not Y[last]:
        raise ctx.falsify("(C1)", f"(C1) guarantees z_t exists but Y[{last}] is empty")
    z = [0] * t
    z[last] = lowest_bit(Y[last])
    for i in range(last - 1, -1, -1):
        choices = cable.z(i, i + 1).mask & adj[z[i + 1]]
        if not choices:
            raise ctx.falsify("type2", f"type 2 guarantees a neighbour of {z[i + 1]} in Z[{i},{i + 1}]", [z[i + 1]])
        z[i] = lowest_bit(choices)
    missed = X[last] & ~adj[z[last - 1]]
    if not missed:
        raise ctx.falsify("(C3)", f"(C3) guarantees a non-neighbour of {z[last - 1]} in X[{last}]", [z[last - 1]])
    x_t = lowest_bit(missed)
    ctx.step("chain", {"z": z, "x_t": x_t}, {"t": t})

    covered = 0
    for i in range(t):
        clique = X[i] | 1 << z[i]
        second = n2(graph, VertexSet(clique))
        value = ctx.chi(f"N2(X[{i}]+z_{i})", second)
        ctx.require("tau", value <= tau, f"chi(N2(X[{i}] + {z[i]})) = {value} exceeds {tau}", [*iter_bits(clique)])
        c_i = 0
        for y in iter_bits(Y[0] & adj[z[i]]):
            c_i |= adj[y]
        covered |= c_i & cable.C.mask
    rest = cable.C.mask & ~covered
    if not rest:
        if ctx.transcript.hypotheses["C-chi"][0] is HypothesisStatus.VERIFIED:
            raise ctx.falsify("u-exists", f"chi(C) > {t}*{tau} yet every base vertex lies in some C_i")
        raise PreconditionViolation("C-chi", f"every base vertex lies in some C_i and chi(C) = {chi_c} <= {t * tau}")
    u = lowest_bit(rest)
    v = lowest_bit(Y[0] & adj[u])
    x_1 = lowest_bit(X[0])
    cycle = (v, x_1, *z, x_t)
    ctx.step("close", {"u": u, "v": v, "x_1": x_1}, {"hole": len(cycle)})
    if len(set(cycle)) != len(cycle):
        raise ctx.falsify("hole", f"closing walk {list(cycle)} repeats a vertex", cycle)
    hole = Hole(cycle)
    defect = hole_defect(graph, hole, ell)
    if defect is not None or hole.length != ell:
        raise ctx.falsify("hole", defect or f"length {hole.length} is not {ell}", cycle)
    logger.info("type2 built hole of length %d", ell)
    ctx.finish("hole", hole.to_json())
    return EngineOutcome("hole", hole, ctx.transcript)


# --- Growing a cable -------------------------------------------------------------


def default_phi(ell: int, kappa: int) -> Callable[[int], int]:
    """The base clique-control function 2(ell-3)(kappa+x)+1."""
    return lambda x: phi1(x, ell, kappa).value


def grow_cable(
    graph: Graph,
    cable: Cable,
    kappa: int,
    tau: int,
    phi: Optional[Callable[[int], int]] = None,
    limits: SolverLimits = UNLIMITED,
    *,
    target: Optional[int] = None,
    ell: int = 4,
    cache: Optional[SubsetChromaticCache] = None,
) -> EngineOutcome:
    """Extends an h-cable of length s to length s + 1 whose base has chromatic number above ``target``.

    ``target`` plays sigma_{s+1} (default tau + h kappa); d_i = (h+1)^(s-i) target.
    ``phi`` is the clique-control function, phi_1 for ``ell`` by default.
    """
    ctx = EngineContext(graph, "grow_cable", limits, cache)
    h = cable.h
    floor = tau + h * kappa
    target = floor if target is None else target
    if target < floor:
        raise PreconditionViolation("target", f"target {target} is below tau + h*kappa = {floor}")
    phi = phi or default_phi(ell, kappa)
    _require_cable(ctx, cable)
    ctx.assumed("kappa", "checked on the cliques a case-2 cover failure touches")
    ctx.assumed("tau", "checked on the cliques a case-2 cover failure touches")
    ctx.assumed("clique-control", "operational: the clique search succeeds whenever chi demands")

    adj = graph.adjacency_masks
    s = cable.length
    base = cable.C.mask
    d = [(h + 1) ** (s - i) * target for i in range(s + 1)]

    # fingerprints f_{i,v}: is C_{i,v} expensive
    fibres: dict[tuple[int, ...], int] = {}
    for v in iter_bits(base):
        key = []
        for i in range(s):
            shared = 0
            for y in iter_bits(cable.Y[i].mask & adj[v]):
                shared |= adj[y]
            c_iv = shared & base & ~adj[v] & ~(1 << v)
            key.append(int(c_iv.bit_count() > floor and ctx.chi(f"C[{i},{v}]", VertexSet(c_iv)) > floor))
        fibres[tuple(key)] = fibres.get(tuple(key), 0) | 1 << v
    if not fibres:
        raise PreconditionViolation("insufficient-chi", "the base is empty")
    f, c1, chi1 = best_fibre(ctx, "C1", fibres)
    ctx.step("fingerprint", {"f": list(f)}, {"fibres": len(fibres), "C1": c1.bit_count()}, {"C1": chi1})

    found = find_clique_with_large_n2(graph, h, d[0], limits, within=VertexSet(c1), cache=ctx.cache)
    if found is None:
        bar = phi(d[0])
        if chi1 > bar:
            raise ctx.falsify("clique-control", f"chi(C_1) = {chi1} > phi({d[0]}) = {bar} but no {h}-clique has chi(N^2) > {d[0]}")
        raise PreconditionViolation("insufficient-chi", f"chi(C_1) = {chi1} <= phi({d[0]}) = {bar}; no {h}-clique has chi(N^2) > {d[0]}")
    x_new = found.mask
    n_new = common_neighbours_mask(adj, x_new, c1)
    region = second_neighbourhood_mask(adj, x_new, c1)
    ctx.step("clique", {"X": found}, {"N": n_new.bit_count(), "D0": region.bit_count()}, {"D0": ctx.chi("D0", VertexSet(region))})

    new_y = list(cable.Y)
    new_z = dict(cable.Z)
    for i in range(1, s + 1):
        p = i - 1
        y_p = cable.Y[p].mask
        w = 0
        for y in iter_bits(y_p):
            if adj[y] & x_new == x_new:
                w |= 1 << y
        u_x = {}
        for x in iter_bits(x_new):
            seers = 0
            for y in iter_bits(y_p & ~adj[x]):
                seers |= adj[y]
            u_x[x] = region & seers
        case1 = None
        for x in iter_bits(x_new):
            if u_x[x] and ctx.chi(f"U[{p},{x}]", VertexSet(u_x[x])) > d[i]:
                case1 = x
                break
        if case1 is not None:
            region = u_x[case1]
            new_y[p] = VertexSet(y_p & ~adj[case1])
            ctx.step("case-1", {"position": p, "x": case1}, {"D": region.bit_count()})
            continue
        for mask in u_x.values():
            region &= ~mask
        z_part = y_p & ~w
        lonely = [v for v in iter_bits(n_new) if not adj[v] & z_part]
        if lonely:
            _explain_cover_failure(ctx, x_new, lonely[0], kappa, tau)
            raise ctx.falsify("case-2-cover", f"Z[{p},{s}] does not cover {lonely[0]} in the new N", [lonely[0]])
        new_y[p] = VertexSet(w)
        if z_part:
            new_z[(p, s)] = VertexSet(z_part)
        ctx.step("case-2", {"position": p}, {"W": w.bit_count(), "Z": z_part.bit_count(), "D": region.bit_count()})

    grown = Cable(
        h,
        cable.X + (found,),
        cable.N + (VertexSet(n_new),),
        tuple(new_y) + (VertexSet(n_new),),
        new_z,
        VertexSet(region),
    )
    chi_base = ctx.chi("base", grown.C)
    if chi_base <= target:
        raise ctx.falsify("base-chi", f"chi of the new base is {chi_base}, not above {target}")
    verdict = verify_cable(graph, grown)
    if not verdict.ok:
        first = verdict.violations[0]
        raise ctx.falsify(first.clause, first.message, first.witness)
    logger.info("grow_cable length %d -> %d, chi(base) = %d", s, s + 1, chi_base)
    ctx.finish("cable", grown.to_json())
    return EngineOutcome("cable", grown, ctx.transcript)


def _explain_cover_failure(ctx: EngineContext, clique: int, v: int, kappa: int, tau: int) -> None:
    """A case-2 cover failure contradicts the kappa or tau bound, or the construction itself."""
    adj = ctx.graph.adjacency_masks
    for x in iter_bits(clique):
        value = ctx.chi(f"N1({x})", VertexSet(adj[x]))
        ctx.require("kappa", value <= kappa, f"chi(N1({x})) = {value} exceeds {kappa}", [x])
    bigger = VertexSet(clique | 1 << v)
    value = ctx.chi("N2(X+v)", n2(ctx.graph, bigger))
    ctx.require("tau", value <= tau, f"chi(N2({bigger.to_json()})) = {value} exceeds {tau}", list(bigger))
