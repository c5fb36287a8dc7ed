"""Generate command: writes a sampled or planted graph, and the planted structure when there is one."""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from holebound.formats import write_graph
from holebound.generators import gen_chordal, gen_gnp, gen_planted_cable, gen_planted_tick_cluster
from holebound.handlers.validation import ExitCode, UsageError, emit
from holebound.storage import write_json
from holebound.structures import PairType


def parse_types(text: str, t: int) -> dict[tuple[int, int], PairType]:
    """One type for every pair, or a comma list of types in lexicographic pair order."""
    names = [s.strip() for s in text.split(",") if s.strip()]
    pairs = list(combinations(range(t), 2))
    if len(names) == 1:
        names = names * len(pairs)
    if len(names) != len(pairs):
        raise UsageError(f"--types lists {len(names)} types for {len(pairs)} pairs")
    try:
        return {pair: PairType(name) for pair, name in zip(pairs, names)}
    except ValueError:
        raise UsageError(f"--types entries must be type1 or type2, got {text!r}") from None


def handle_generate(
    model: str,
    output: str,
    seed: int,
    n: Optional[int] = None,
    p: Optional[float] = None,
    width: Optional[int] = None,
    h: int = 1,
    t: int = 2,
    types: str = "type2",
    base_chi: int = 1,
    structure_output: Optional[str] = None,
) -> ExitCode:
    structure = None
    if model.startswith("planted") and not structure_output:
        raise UsageError(f"{model} needs --structure-output for the planted structure")
    if model == "gnp":
        if n is None or p is None:
            raise UsageError("gnp needs --n and --p")
        graph = gen_gnp(n, p, seed)
    elif model == "chordal":
        if n is None or width is None:
            raise UsageError("chordal needs --n and --width")
        graph = gen_chordal(n, width, seed)
    elif model == "planted-cable":
        graph, cable = gen_planted_cable(h, t, parse_types(types, t), base_chi, seed)
        structure = cable.to_json()
    elif model == "planted-ticks":
        if n is None:
            raise UsageError("planted-ticks needs --n")
        planted = gen_planted_tick_cluster(n, seed)
        graph = planted.graph
        structure = planted.multicover.to_json()
    else:
        raise UsageError(f"unknown generator {model!r}")
    write_graph(graph, output)
    if structure is not None:
        write_json(structure_output, structure)
    emit({"model": model, "n": graph.n, "m": graph.num_edges, "graph": output, "structure": structure_output})
    return ExitCode.OK
