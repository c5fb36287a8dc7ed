"""Solver commands: omega, chi, longest-hole, find-hole, chordal and the layered decomposition."""

from __future__ import annotations

import logging
from typing import Optional

from holebound.engines.longhole import longhole_decompose
from holebound.handlers.validation import ExitCode, emit, load_graph
from holebound.holes import find_hole_at_least, is_chordal, longest_hole
from holebound.solvers import SolverLimits, chromatic_number, omega

logger = logging.getLogger(__name__)


def _status_code(complete: bool) -> ExitCode:
    return ExitCode.OK if complete else ExitCode.BUDGET_EXHAUSTED


def handle_omega(graph_path: str, limits: SolverLimits, output: Optional[str] = None) -> ExitCode:
    result = omega(load_graph(graph_path), limits)
    emit(result.to_json(), output)
    return _status_code(result.complete)


def handle_chi(graph_path: str, limits: SolverLimits, output: Optional[str] = None) -> ExitCode:
    result = chromatic_number(load_graph(graph_path), limits)
    emit(result.to_json(), output)
    return _status_code(result.complete)


def handle_longest_hole(graph_path: str, limits: SolverLimits, output: Optional[str] = None) -> ExitCode:
    result = longest_hole(load_graph(graph_path), limits)
    emit(result.to_json(), output)
    return _status_code(result.complete)


def handle_find_hole(graph_path: str, min_len: int, limits: SolverLimits, output: Optional[str] = None) -> ExitCode:
    result = find_hole_at_least(load_graph(graph_path), min_len, limits)
    emit(result.to_json(), output)
    return _status_code(result.complete)


def handle_chordal(graph_path: str, output: Optional[str] = None) -> ExitCode:
    graph = load_graph(graph_path)
    emit({"chordal": is_chordal(graph), "n": graph.n}, output)
    return ExitCode.OK


def handle_decompose(
    graph_path: str,
    ell: int,
    kappa: int,
    tau: int,
    limits: SolverLimits,
    output: Optional[str] = None,
    check_preconditions: bool = True,
) -> ExitCode:
    result = longhole_decompose(load_graph(graph_path), ell, kappa, tau, limits, check_preconditions=check_preconditions)
    emit(result.to_json(), output)
    return ExitCode.OK
