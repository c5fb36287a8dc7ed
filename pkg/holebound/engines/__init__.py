"""Constructive engines: each turns its hypotheses into the promised object or names the clause that failed."""

from holebound.engines.cable import default_phi, grow_cable, type1_extract_multicover, type2_construct_hole
from holebound.engines.longhole import DecompositionResult, check_local_bounds, decomposition_bound, longhole_decompose
from holebound.engines.multicover import (
    TickCluster,
    TickResult,
    build_tick_cluster,
    grow_tick,
    impression_to_hole,
    stabilize_multicover,
    ticks_to_impression,
)
from holebound.engines.ramsey import (
    classify_cable_pairs,
    homogeneous_subcable,
    monochromatic_subset,
    monochromatic_with_colour,
)
from holebound.engines.transcript import (
    EngineError,
    EngineOutcome,
    EngineTranscript,
    FalsificationCandidate,
    HypothesisStatus,
    PreconditionViolation,
    audit_transcript,
)

__all__ = [
    "DecompositionResult",
    "EngineError",
    "EngineOutcome",
    "EngineTranscript",
    "FalsificationCandidate",
    "HypothesisStatus",
    "PreconditionViolation",
    "TickCluster",
    "TickResult",
    "audit_transcript",
    "build_tick_cluster",
    "check_local_bounds",
    "classify_cable_pairs",
    "decomposition_bound",
    "default_phi",
    "grow_cable",
    "grow_tick",
    "homogeneous_subcable",
    "impression_to_hole",
    "longhole_decompose",
    "monochromatic_subset",
    "monochromatic_with_colour",
    "stabilize_multicover",
    "ticks_to_impression",
    "type1_extract_multicover",
    "type2_construct_hole",
]
