"""Engine transcripts, hypothesis bookkeeping and the engine error hierarchy."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable, Optional

from holebound.graph import Coloring, Graph, SetLike, VertexSet
from holebound.solvers import (
    UNLIMITED,
    BudgetExhaustedError,
    SolverLimits,
    SubsetChromaticCache,
    chi_of_subset,
    color_subset,
    omega,
)

logger = logging.getLogger(__name__)


class EngineError(RuntimeError):
    """Raised when an engine cannot produce its object."""


class PreconditionViolation(EngineError):
    """Raised when an engine input fails a hypothesis of the construction."""

    def __init__(self, clause: str, message: str, witness: Iterable[int] = ()):
        super().__init__(f"{clause}: {message}")
        self.clause = clause
        self.message = message
        self.witness = tuple(witness)


class FalsificationCandidate(EngineError):
    """Raised when a step the construction guarantees fails although its hypotheses were checked."""

    def __init__(
        self,
        clause: str,
        message: str,
        witness: Iterable[int] = (),
        transcript: Optional[EngineTranscript] = None,
    ):
        super().__init__(f"{clause}: {message}")
        self.clause = clause
        self.message = message
        self.witness = tuple(witness)
        self.transcript = transcript


class HypothesisStatus(Enum):
    VERIFIED = "verified"
    ASSUMED = "assumed"
    VIOLATED = "violated"


@dataclass(frozen=True)
class ChiClaim:
    """chi(G[vertices]) == value, as computed during a run."""

    label: str
    vertices: VertexSet
    value: int

    def to_json(self) -> dict:
        return {"label": self.label, "vertices": self.vertices.to_json(), "value": self.value}

    @classmethod
    def from_json(cls, data: dict) -> ChiClaim:
        return cls(data["label"], VertexSet.of(data["vertices"]), int(data["value"]))


@dataclass
class Step:
    name: str
    witnesses: dict[str, Any] = field(default_factory=dict)
    sizes: dict[str, int] = field(default_factory=dict)
    chi: dict[str, int] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "witnesses": _jsonable(self.witnesses),
            "sizes": dict(self.sizes),
            "chi": dict(self.chi),
        }

    @classmethod
    def from_json(cls, data: dict) -> Step:
        return cls(data["name"], dict(data.get("witnesses", {})), dict(data.get("sizes", {})), dict(data.get("chi", {})))


def _jsonable(value: Any) -> Any:
    if isinstance(value, VertexSet):
        return value.to_json()
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Enum):
        return value.value
    return value


@dataclass
class EngineTranscript:
    engine: str
    steps: list[Step] = field(default_factory=list)
    claims: list[ChiClaim] = field(default_factory=list)
    hypotheses: dict[str, tuple[HypothesisStatus, str]] = field(default_factory=dict)
    outcome_kind: Optional[str] = None
    outcome: Optional[dict] = None
    children: list[EngineTranscript] = field(default_factory=list)

    def all_claims(self) -> list[ChiClaim]:
        claims = list(self.claims)
        for child in self.children:
            claims.extend(child.all_claims())
        return claims

    def to_json(self) -> dict:
        return {
            "engine": self.engine,
            "steps": [s.to_json() for s in self.steps],
            "claims": [c.to_json() for c in self.claims],
            "hypotheses": {
                name: {"status": status.value, "detail": detail} for name, (status, detail) in self.hypotheses.items()
            },
            "outcome_kind": self.outcome_kind,
            "outcome": self.outcome,
            "children": [c.to_json() for c in self.children],
        }

    @classmethod
    def from_json(cls, data: dict) -> EngineTranscript:
        return cls(
            engine=data["engine"],
            steps=[Step.from_json(s) for s in data.get("steps", [])],
            claims=[ChiClaim.from_json(c) for c in data.get("claims", [])],
            hypotheses={
                name: (HypothesisStatus(h["status"]), h.get("detail", ""))
                for name, h in data.get("hypotheses", {}).items()
            },
            outcome_kind=data.get("outcome_kind"),
            outcome=data.get("outcome"),
            children=[cls.from_json(c) for c in data.get("children", [])],
        )


class EngineContext:
    """Shared state of one engine run: graph, solver limits, memo cache and the transcript being written."""

    def __init__(
        self,
        graph: Graph,
        engine: str,
        limits: SolverLimits = UNLIMITED,
        cache: Optional[SubsetChromaticCache] = None,
        strict: bool = False,
    ) -> None:
        self.graph = graph
        self.limits = limits
        self.cache = cache
        self.strict = strict
        self.transcript = EngineTranscript(engine)

    def child(self, engine: str) -> EngineContext:
        sub = EngineContext(self.graph, engine, self.limits, self.cache, self.strict)
        self.transcript.children.append(sub.transcript)
        return sub

    def chi(self, label: str, vertices: SetLike) -> int:
        mask = self.graph.check_set(vertices)
        value = chi_of_subset(self.graph, VertexSet(mask), self.limits, self.cache)
        self.transcript.claims.append(ChiClaim(label, VertexSet(mask), value))
        return value

    def color(self, label: str, vertices: SetLike) -> Coloring:
        """Optimal colouring of ``G[vertices]`` in parent ids; records its size as a claim."""
        mask = self.graph.check_set(vertices)
        result = color_subset(self.graph, VertexSet(mask), self.limits)
        if not result.complete:
            raise BudgetExhaustedError(
                f"colouring {label} not settled", lower=result.lower, upper=result.upper
            )
        self.transcript.claims.append(ChiClaim(label, VertexSet(mask), result.chi))
        return result.coloring

    def omega(self, label: str, vertices: SetLike) -> int:
        mask = self.graph.check_set(vertices)
        result = omega(self.graph, self.limits, within=VertexSet(mask))
        if not result.complete:
            raise BudgetExhaustedError(f"clique number of {label} not settled", lower=result.size)
        logger.debug("engine=%s omega %s=%d", self.transcript.engine, label, result.size)
        return result.size

    def step(self, name: str, witnesses: Optional[dict] = None, sizes: Optional[dict] = None, chi: Optional[dict] = None) -> None:
        logger.debug("engine=%s step=%s sizes=%s chi=%s", self.transcript.engine, name, sizes, chi)
        self.transcript.steps.append(Step(name, dict(witnesses or {}), dict(sizes or {}), dict(chi or {})))

    def verified(self, name: str, detail: str = "") -> None:
        self.transcript.hypotheses[name] = (HypothesisStatus.VERIFIED, detail)

    def assumed(self, name: str, detail: str = "") -> None:
        self.transcript.hypotheses[name] = (HypothesisStatus.ASSUMED, detail)

    def require(self, name: str, holds: bool, message: str, witness: Iterable[int] = ()) -> None:
        """Records a checked hypothesis; a failed one aborts the run."""
        if holds:
            self.verified(name)
            return
        self.transcript.hypotheses[name] = (HypothesisStatus.VIOLATED, message)
        logger.warning("engine=%s precondition=%s failed: %s", self.transcript.engine, name, message)
        raise PreconditionViolation(name, message, witness)

    def target(self, name: str, holds: bool, message: str) -> None:
        """A quantitative hypothesis (size or chromatic threshold); only strict runs reject on it."""
        if holds:
            self.verified(name)
        elif self.strict:
            self.require(name, False, message)
        else:
            self.transcript.hypotheses[name] = (HypothesisStatus.VIOLATED, message)
            logger.info("engine=%s threshold=%s unmet, continuing: %s", self.transcript.engine, name, message)

    def falsify(self, clause: str, message: str, witness: Iterable[int] = ()) -> FalsificationCandidate:
        logger.warning("engine=%s falsification clause=%s: %s", self.transcript.engine, clause, message)
        self.transcript.outcome_kind = "falsification"
        self.transcript.outcome = {"clause": clause, "message": message, "witness": list(witness)}
        return FalsificationCandidate(clause, message, witness, self.transcript)

    def finish(self, kind: str, outcome: dict) -> EngineTranscript:
        self.transcript.outcome_kind = kind
        self.transcript.outcome = outcome
        logger.info(
            "TRACE engine=%s steps=%d claims=%d outcome=%s",
            self.transcript.engine,
            len(self.transcript.steps),
            len(self.transcript.claims),
            kind,
        )
        return self.transcript


@dataclass(frozen=True)
class EngineOutcome:
    """A single engine product (``kind`` names it) with the run transcript."""

    kind: str
    value: Any
    transcript: EngineTranscript

    def to_json(self) -> dict:
        return {"kind": self.kind, self.kind: _jsonable(self.value), "transcript": self.transcript.to_json()}


def best_fibre(ctx: EngineContext, label: str, fibres: dict[Any, int]) -> tuple[Any, int, int]:
    """The fibre of maximum chromatic number; ties go to the fibre with the lowest vertex.

    Returns (key, mask, chi).
    """
    best_key, best_mask, best_chi = None, 0, -1
    for key, mask in sorted(fibres.items(), key=lambda item: item[1] & -item[1]):
        value = ctx.chi(f"{label}[{_jsonable(key)}]", VertexSet(mask))
        if value > best_chi:
            best_key, best_mask, best_chi = key, mask, value
    return best_key, best_mask, best_chi


@dataclass(frozen=True)
class ClaimMismatch:
    claim: ChiClaim
    actual: int

    def to_json(self) -> dict:
        return {"claim": self.claim.to_json(), "actual": self.actual}


def audit_transcript(graph: Graph, transcript: EngineTranscript, limits: SolverLimits = UNLIMITED) -> list[ClaimMismatch]:
    """Recomputes every recorded chromatic number without the memo cache; returns the claims that disagree."""
    fresh = SubsetChromaticCache(capacity=0)
    mismatches = []
    for claim in transcript.all_claims():
        actual = chi_of_subset(graph, claim.vertices, limits, fresh)
        if actual != claim.value:
            mismatches.append(ClaimMismatch(claim, actual))
    return mismatches
