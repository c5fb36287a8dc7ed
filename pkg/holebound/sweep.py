"""Conjecture sweep: sample graphs, filter by clique number and hole length, record exact chi.

Records come out in input order whatever order the workers finish in, and carry the
clique, colouring and hole certificates so a record file can be re-verified later.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from holebound.bounds import digit_budget, main_bound
from holebound.certificates import coloring_defect, hole_defect, is_clique_certificate
from holebound.config import ExperimentConfig, GeneratorConfig
from holebound.engines.longhole import longhole_decompose
from holebound.engines.transcript import EngineError
from holebound.formats import GraphFormatError, from_graph6, to_graph6
from holebound.generators import gen_chordal, gen_gnp
from holebound.graph import Coloring, Graph, GraphInputError, Hole, VertexSet, n2
from holebound.holes import longest_hole
from holebound.solvers import (
    BudgetExhaustedError,
    SolverLimits,
    SubsetChromaticCache,
    chi_of_subset,
    chromatic_number,
    omega,
)
from holebound.storage import join_location, read_text, write_text

logger = logging.getLogger(__name__)

RECORDS_NAME = "records.jsonl"
SUMMARY_NAME = "summary.csv"
BOUND_CHECK_DIGITS = 64

Cell = tuple[int, int]


@dataclass(frozen=True)
class ExperimentRecord:
    """One sampled graph with its exact invariants and certificates."""

    index: int
    generator: int
    sample: int
    graph6: str
    n: int
    m: int
    status: str
    omega: Optional[int] = None
    clique: tuple[int, ...] = ()
    longest_hole: Optional[int] = None
    hole: Optional[tuple[int, ...]] = None
    chi: Optional[int] = None
    chi_lower: Optional[int] = None
    chi_upper: Optional[int] = None
    coloring: Optional[Coloring] = None
    cells: tuple[Cell, ...] = ()
    bound_violations: tuple[Cell, ...] = ()
    outcomes: dict = field(default_factory=dict)
    timings: Optional[dict] = None

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def to_json(self) -> dict:
        data = {
            "index": self.index,
            "generator": self.generator,
            "sample": self.sample,
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "status": self.status,
            "omega": self.omega,
            "clique": list(self.clique),
            "longest_hole": self.longest_hole,
            "hole": None if self.hole is None else list(self.hole),
            "chi": self.chi,
            "chi_lower": self.chi_lower,
            "chi_upper": self.chi_upper,
            "coloring": None if self.coloring is None else self.coloring.to_json(),
            "cells": [list(c) for c in self.cells],
            "bound_violations": [list(c) for c in self.bound_violations],
            "outcomes": self.outcomes,
        }
        if self.timings is not None:
            data["timings"] = self.timings
        return data

    @classmethod
    def from_json(cls, data: dict) -> ExperimentRecord:
        return cls(
            index=int(data["index"]),
            generator=int(data["generator"]),
            sample=int(data["sample"]),
            graph6=data["graph6"],
            n=int(data["n"]),
            m=int(data["m"]),
            status=data["status"],
            omega=data.get("omega"),
            clique=tuple(data.get("clique", ())),
            longest_hole=data.get("longest_hole"),
            hole=None if data.get("hole") is None else tuple(data["hole"]),
            chi=data.get("chi"),
            chi_lower=data.get("chi_lower"),
            chi_upper=data.get("chi_upper"),
            coloring=None if data.get("coloring") is None else Coloring.from_json(data["coloring"]),
            cells=tuple(tuple(c) for c in data.get("cells", ())),
            bound_violations=tuple(tuple(c) for c in data.get("bound_violations", ())),
            outcomes=data.get("outcomes", {}),
            timings=data.get("timings"),
        )


@dataclass(frozen=True)
class CellSummary:
    k: int
    ell: int
    graphs: int
    max_chi: Optional[int]
    bound: Optional[int]


@dataclass(frozen=True)
class SweepResult:
    records: list[ExperimentRecord]
    table: list[CellSummary]

    def records_jsonl(self) -> str:
        return "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in self.records)

    def summary_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "ell", "graphs", "max_chi", "main_bound"])
        for cell in self.table:
            writer.writerow([
                cell.k,
                cell.ell,
                cell.graphs,
                "" if cell.max_chi is None else cell.max_chi,
                "symbolic" if cell.bound is None else cell.bound,
            ])
        return buf.getvalue()


@dataclass(frozen=True)
class _Job:
    index: int
    generator: int
    sample: int
    source: GeneratorConfig
    n: int
    graph_seed: int


def plan_jobs(config: ExperimentConfig) -> list[_Job]:
    """Per-sample seeds derive from SeedSequence([seed, generator, sample])."""
    jobs = []
    for g, source in enumerate(config.generators):
        for s in range(source.count):
            rng = np.random.default_rng(np.random.SeedSequence([config.seed, g, s]))
            n = int(rng.integers(source.n_min, source.n_max + 1))
            jobs.append(_Job(len(jobs), g, s, source, n, int(rng.integers(0, 2**63))))
    return jobs


def sample_graph(job: _Job) -> Graph:
    if job.source.model == "gnp":
        return gen_gnp(job.n, job.source.p, job.graph_seed)
    return gen_chordal(job.n, job.source.width, job.graph_seed)


def cell_bounds(ks: list[int], ells: list[int]) -> dict[Cell, Optional[int]]:
    """main_bound(k, ell) per cell when it is numerically evaluable, None when symbolic."""
    bounds = {}
    with digit_budget(BOUND_CHECK_DIGITS):
        for k in ks:
            for ell in ells:
                expr = main_bound(k, ell)
                bounds[(k, ell)] = expr.value if expr.exact else None
    return bounds


def passes_filter(omega_value: int, hole_length: Optional[int], k: int, ell: int) -> bool:
    """omega <= k and no hole of length >= ell."""
    return omega_value <= k and (hole_length is None or hole_length < ell)


def _decomposition_outcome(graph: Graph, ell: int, limits: SolverLimits, cache: SubsetChromaticCache) -> dict:
    """Runs the layered decomposition with the graph's own local bounds; it must colour, never find a hole."""
    adj = graph.adjacency_masks
    kappa = max((chi_of_subset(graph, VertexSet(adj[v]), limits, cache) for v in graph.vertices), default=0)
    tau = max((chi_of_subset(graph, n2(graph, [v]), limits, cache) for v in graph.vertices), default=0)
    result = longhole_decompose(graph, ell, kappa, tau, limits, cache=cache, check_preconditions=False)
    outcome = {"engine": "longhole", "ell": ell, "kappa": kappa, "tau": tau, "bound": result.bound}
    if result.coloring is not None:
        outcome["colors"] = result.coloring.num_colors
    else:
        outcome["hole"] = list(result.hole.cycle)
    return outcome


def evaluate_graph(
    job: _Job,
    graph: Graph,
    config: ExperimentConfig,
    bounds: dict[Cell, Optional[int]],
) -> ExperimentRecord:
    limits = config.limits.solver_limits()
    cache = SubsetChromaticCache(config.limits.memo_entries)
    timings: dict[str, float] = {}
    base = dict(index=job.index, generator=job.generator, sample=job.sample, graph6=to_graph6(graph), n=graph.n, m=graph.num_edges)

    t0 = time.perf_counter()
    clique = omega(graph, limits)
    timings["omega"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    holes = longest_hole(graph, limits)
    timings["longest_hole"] = time.perf_counter() - t0
    if not clique.complete or not holes.complete:
        logger.warning("sweep graph=%d budget exhausted before filtering", job.index)
        return ExperimentRecord(**base, status="budget_exhausted", timings=timings if config.record_timings else None)

    hole_length = holes.length
    cells = tuple(
        (k, ell) for k in config.ks for ell in config.ells if passes_filter(clique.size, hole_length, k, ell)
    )
    known = dict(
        omega=clique.size,
        clique=tuple(clique.witness),
        longest_hole=hole_length,
        hole=None if holes.hole is None else holes.hole.cycle,
        cells=cells,
    )

    t0 = time.perf_counter()
    coloured = chromatic_number(graph, limits)
    timings["chi"] = time.perf_counter() - t0
    if not coloured.complete:
        logger.warning("sweep graph=%d n=%d chi budget exhausted lower=%d upper=%d", job.index, graph.n, coloured.lower, coloured.upper)
        return ExperimentRecord(
            **base,
            **known,
            status="budget_exhausted",
            chi_lower=coloured.lower,
            chi_upper=coloured.upper,
            timings=timings if config.record_timings else None,
        )

    violations = tuple(cell for cell in cells if bounds.get(cell) is not None and coloured.chi > bounds[cell])
    for cell in violations:
        logger.error("sweep graph=%d chi=%d exceeds main_bound%s=%d", job.index, coloured.chi, cell, bounds[cell])

    outcomes: dict = {}
    t0 = time.perf_counter()
    try:
        outcomes = _decomposition_outcome(graph, max(4, (hole_length or 3) + 1), limits, cache)
    except BudgetExhaustedError as e:
        outcomes = {"engine": "longhole", "status": "budget_exhausted", "message": str(e)}
    except EngineError as e:
        logger.error("sweep graph=%d decomposition failed: %s", job.index, e)
        outcomes = {"engine": "longhole", "status": "failed", "message": str(e)}
    timings["decompose"] = time.perf_counter() - t0

    logger.info("sweep graph=%d n=%d omega=%d chi=%s hole=%s", job.index, graph.n, clique.size, coloured.chi, hole_length)
    return ExperimentRecord(
        **base,
        **known,
        status="complete",
        chi=coloured.chi,
        chi_lower=coloured.chi,
        chi_upper=coloured.chi,
        coloring=coloured.coloring,
        bound_violations=violations,
        outcomes=outcomes,
        timings=timings if config.record_timings else None,
    )


def _run_job(job: _Job, config: ExperimentConfig, bounds: dict[Cell, Optional[int]]) -> ExperimentRecord:
    return evaluate_graph(job, sample_graph(job), config, bounds)


def summarize(records: list[ExperimentRecord], ks: list[int], ells: list[int], bounds: dict[Cell, Optional[int]]) -> list[CellSummary]:
    """Maximum exact chi per (k, ell) cell over the records that pass its filter."""
    table = []
    for k in ks:
        for ell in ells:
            chis = [r.chi for r in records if r.complete and (k, ell) in r.cells]
            table.append(CellSummary(k, ell, len(chis), max(chis) if chis else None, bounds.get((k, ell))))
    return table


def run_conjecture_sweep(config: ExperimentConfig) -> SweepResult:
    """Samples every configured graph on a worker pool and tabulates max chi per cell."""
    jobs = plan_jobs(config)
    bounds = cell_bounds(config.ks, config.ells)
    logger.info("sweep start jobs=%d workers=%d seed=%d", len(jobs), config.workers, config.seed)

    records: list[ExperimentRecord] = []
    with ThreadPoolExecutor(max_workers=config.workers) as executor:
        futures = {executor.submit(_run_job, job, config, bounds): job.index for job in jobs}
        for future in as_completed(futures):
            records.append(future.result())
    records.sort(key=lambda r: r.index)

    table = summarize(records, config.ks, config.ells, bounds)
    logger.info("sweep done records=%d exhausted=%d", len(records), sum(not r.complete for r in records))
    return SweepResult(records, table)


def write_sweep(result: SweepResult, output: str, s3_client=None) -> tuple[str, str]:
    """Writes records.jsonl and summary.csv under ``output``; returns both locations."""
    records_at = join_location(output, RECORDS_NAME)
    summary_at = join_location(output, SUMMARY_NAME)
    write_text(records_at, result.records_jsonl(), content_type="application/x-ndjson", s3_client=s3_client)
    write_text(summary_at, result.summary_csv(), content_type="text/csv", s3_client=s3_client)
    return records_at, summary_at


# --- Replay ----------------------------------------------------------------------


@dataclass(frozen=True)
class ReplayVerdict:
    index: int
    defects: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.defects

    def to_json(self) -> dict:
        return {"index": self.index, "ok": self.ok, "defects": list(self.defects)}


def verify_record(record: ExperimentRecord) -> ReplayVerdict:
    """Re-checks a record's certificates and filter cells with the independent verifiers."""
    defects: list[str] = []
    try:
        graph = from_graph6(record.graph6)
    except GraphFormatError as e:
        return ReplayVerdict(record.index, (f"graph6: {e}",))
    if graph.n != record.n or graph.num_edges != record.m:
        defects.append(f"graph has n={graph.n}, m={graph.num_edges} against recorded {record.n}, {record.m}")
    if record.omega is not None:
        if len(record.clique) != record.omega or not is_clique_certificate(graph, record.clique):
            defects.append(f"clique {list(record.clique)} does not certify omega={record.omega}")
    if record.hole is not None:
        try:
            problem = hole_defect(graph, Hole(record.hole))
        except GraphInputError as e:
            problem = str(e)
        if problem is not None:
            defects.append(f"hole: {problem}")
        elif len(record.hole) != record.longest_hole:
            defects.append(f"hole has length {len(record.hole)} against recorded {record.longest_hole}")
    elif record.longest_hole is not None:
        defects.append("longest hole recorded without a witness")
    if record.complete:
        if record.coloring is None:
            defects.append("complete record has no colouring")
        else:
            problem = coloring_defect(graph, record.coloring)
            if problem is not None:
                defects.append(f"coloring: {problem}")
            elif record.coloring.num_colors != record.chi:
                defects.append(f"coloring uses {record.coloring.num_colors} colours against chi={record.chi}")
        if record.omega is not None and record.chi is not None and record.chi < record.omega:
            defects.append(f"chi={record.chi} is below omega={record.omega}")
    for k, ell in record.cells:
        if record.omega is None or not passes_filter(record.omega, record.longest_hole, k, ell):
            defects.append(f"cell ({k}, {ell}) does not pass the filter")
    return ReplayVerdict(record.index, tuple(defects))


def parse_records(text: str) -> list[ExperimentRecord]:
    return [ExperimentRecord.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


def replay_records(location: str, s3_client=None) -> list[ReplayVerdict]:
    """Verdicts for every record in a JSONL file; raises FileNotFoundError when it is absent."""
    text = read_text(location, s3_client=s3_client)
    if text is None:
        raise FileNotFoundError(location)
    verdicts = [verify_record(r) for r in parse_records(text)]
    bad = sum(not v.ok for v in verdicts)
    if bad:
        logger.warning("replay %s: %d of %d records fail re-verification", location, bad, len(verdicts))
    return verdicts
