"""Engine driver: runs one constructive engine on a graph file and a structure file, writes its transcript."""

from __future__ import annotations

import logging
from typing import Callable, Optional

from holebound.engines.cable import grow_cable, type1_extract_multicover, type2_construct_hole
from holebound.engines.longhole import longhole_decompose
from holebound.engines.multicover import (
    build_tick_cluster,
    grow_tick,
    impression_to_hole,
    stabilize_multicover,
    ticks_to_impression,
)
from holebound.graph import Graph
from holebound.handlers.validation import ExitCode, UsageError, emit, load_graph, load_json, require_params
from holebound.solvers import SolverLimits
from holebound.structures import Cable, Impression, Multicover, Tick

logger = logging.getLogger(__name__)


def _unwrap(data: dict, kind: str) -> dict:
    """Accepts either the bare structure or an engine outcome carrying it under ``kind``."""
    if data.get("kind") == kind and isinstance(data.get(kind), dict):
        return data[kind]
    return data


def _structure(path: Optional[str], kind: str) -> dict:
    return _unwrap(load_json(path), kind)


def _longhole(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    ell, kappa, tau = require_params(params, "longhole", "ell", "kappa", "tau")
    return longhole_decompose(graph, ell, kappa, tau, limits, check_preconditions=bool(params.get("check", 1)))


def _grow_tick(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    j, k, m, c, kappa = require_params(params, "grow-tick", "j", "k", "m", "c", "kappa")
    mc = Multicover.from_json(_structure(path, "multicover"))
    return grow_tick(graph, mc, j, k, m, c, kappa, limits, strict=bool(params.get("strict", 0)))


def _stabilize(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    (kappa,) = require_params(params, "stabilize", "kappa")
    return stabilize_multicover(graph, Multicover.from_json(_structure(path, "multicover")), kappa, limits)


def _tick_cluster(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    n, k, kappa = require_params(params, "tick-cluster", "n", "k", "kappa")
    mc = Multicover.from_json(_structure(path, "multicover"))
    return build_tick_cluster(graph, mc, n, k, kappa, limits, strict=bool(params.get("strict", 0)))


def _ticks_to_impression(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    data = load_json(path)
    if "ticks" not in data or "multicover" not in data:
        raise UsageError("ticks-to-impression needs a JSON object with 'ticks' and 'multicover'")
    ticks = [Tick.from_json(t) for t in data["ticks"]]
    return ticks_to_impression(graph, ticks, Multicover.from_json(data["multicover"]), limits)


def _impression_to_hole(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    return impression_to_hole(graph, Impression.from_json(_structure(path, "impression")), limits)


def _type1(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    (m,) = require_params(params, "type1", "m")
    cable = Cable.from_json(_structure(path, "cable"))
    return type1_extract_multicover(graph, cable, m, limits, strict=bool(params.get("strict", 0)))


def _type2(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    (tau,) = require_params(params, "type2", "tau")
    cable = Cable.from_json(_structure(path, "cable"))
    return type2_construct_hole(graph, cable, tau, limits, strict=bool(params.get("strict", 0)))


def _grow_cable(graph: Graph, path: Optional[str], params: dict, limits: SolverLimits):
    kappa, tau = require_params(params, "grow-cable", "kappa", "tau")
    cable = Cable.from_json(_structure(path, "cable"))
    return grow_cable(graph, cable, kappa, tau, None, limits, target=params.get("target"), ell=params.get("ell", 4))


ENGINES: dict[str, Callable] = {
    "longhole": _longhole,
    "grow-tick": _grow_tick,
    "stabilize": _stabilize,
    "tick-cluster": _tick_cluster,
    "ticks-to-impression": _ticks_to_impression,
    "impression-to-hole": _impression_to_hole,
    "type1": _type1,
    "type2": _type2,
    "grow-cable": _grow_cable,
}


def handle_engine(
    name: str,
    graph_path: str,
    structure_path: Optional[str],
    params: dict[str, int],
    limits: SolverLimits,
    output: Optional[str] = None,
) -> ExitCode:
    """Exit 0 with the outcome written; failures map to 4 (precondition), 5 (budget) or 6 (falsification)."""
    if name not in ENGINES:
        raise UsageError(f"unknown engine {name!r}")
    graph = load_graph(graph_path)
    result = ENGINES[name](graph, structure_path, params, limits)
    logger.info("engine=%s graph=%s done", name, graph_path)
    emit(result.to_json(), output)
    return ExitCode.OK
