"""Monochromatic subsets of pair colourings, and the type-homogeneous subcables they give."""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Mapping, Optional

from holebound.graph import Graph
from holebound.structures import Cable, PairType, StructureError, cable_pair_type, subcable, verify_cable

logger = logging.getLogger(__name__)

PairColouring = Mapping[tuple[int, int], int]


def _colour_of(colors: PairColouring, i: int, j: int) -> int:
    try:
        return colors[(i, j)]
    except KeyError:
        raise ValueError(f"pair ({i}, {j}) has no colour") from None


def monochromatic_with_colour(colors: PairColouring, t: int, m: int) -> Optional[tuple[int, tuple[int, ...]]]:
    """(colour, indices) for the first monochromatic ``m``-subset of range(t), colours tried in increasing order."""
    if m < 0 or t < 0:
        raise ValueError(f"t and m must be nonnegative, got t={t}, m={m}")
    if m > t:
        return None
    palette = sorted({_colour_of(colors, i, j) for i, j in combinations(range(t), 2)})
    if m <= 1:
        return (palette[0] if palette else 0, tuple(range(m)))
    for colour in palette:
        same = [[False] * t for _ in range(t)]
        for i, j in combinations(range(t), 2):
            if colors[(i, j)] == colour:
                same[i][j] = same[j][i] = True
        found = _clique_of(same, t, m)
        if found is not None:
            return colour, found
    return None


def _clique_of(same: list[list[bool]], t: int, m: int) -> Optional[tuple[int, ...]]:
    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == m:
            return True
        # not enough indices left to finish
        for v in range(start, t - (m - len(chosen)) + 1):
            if all(same[u][v] for u in chosen):
                chosen.append(v)
                if extend(v + 1):
                    return True
                chosen.pop()
        return False

    return tuple(chosen) if extend(0) else None


def monochromatic_subset(colors: PairColouring, t: int, m: int) -> Optional[tuple[int, ...]]:
    """Indices 0 <= i_1 < ... < i_m < t whose pairs all share a colour, or None when no such subset exists."""
    found = monochromatic_with_colour(colors, t, m)
    return None if found is None else found[1]


def classify_cable_pairs(graph: Graph, cable: Cable) -> dict[tuple[int, int], PairType]:
    """Pair type of every i < j of a verified cable."""
    verdict = verify_cable(graph, cable)
    if not verdict.ok:
        first = verdict.violations[0]
        raise StructureError(f"cable does not verify: {first.clause}: {first.message}")
    return {
        (i, j): cable_pair_type(graph, cable, i, j, verified=True)
        for i, j in combinations(range(cable.length), 2)
    }


_TYPE_COLOUR = {PairType.TYPE1: 0, PairType.TYPE2: 1}


def homogeneous_subcable(graph: Graph, cable: Cable, m: int) -> Optional[tuple[PairType, Cable]]:
    """A subcable of length ``m`` whose pairs all have one type, or None when the cable is too short for one."""
    types = classify_cable_pairs(graph, cable)
    found = monochromatic_with_colour({pair: _TYPE_COLOUR[kind] for pair, kind in types.items()}, cable.length, m)
    if found is None:
        logger.info("no homogeneous subcable of length %d in a cable of length %d", m, cable.length)
        return None
    colour, indices = found
    kind = PairType.TYPE1 if colour == 0 else PairType.TYPE2
    return kind, subcable(graph, cable, indices, verified=True)
