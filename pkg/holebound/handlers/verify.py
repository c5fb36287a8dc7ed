"""Structure verification command."""

from __future__ import annotations

from typing import Optional

from holebound.handlers.validation import ExitCode, emit, load_graph, load_json
from holebound.structures import verify_structure


def handle_verify(
    graph_path: str,
    structure_path: str,
    kind: str,
    require_stable_N: bool = False,
    output: Optional[str] = None,
) -> ExitCode:
    """Exit 0 when the structure verifies, 4 with the failing clauses otherwise."""
    graph = load_graph(graph_path)
    verdict = verify_structure(graph, kind, load_json(structure_path), require_stable_N=require_stable_N)
    emit({"kind": kind, **verdict.to_json()}, output)
    return ExitCode.OK if verdict.ok else ExitCode.PRECONDITION
