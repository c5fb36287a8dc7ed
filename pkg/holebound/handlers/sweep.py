"""Sweep and replay commands."""

from __future__ import annotations

import logging
from typing import Optional

from holebound.config import load_config, resolve_limits
from holebound.handlers.validation import ExitCode, emit
from holebound.sweep import replay_records, run_conjecture_sweep, write_sweep

logger = logging.getLogger(__name__)


def handle_sweep(
    config_path: str,
    node_budget: Optional[int] = None,
    time_budget: Optional[float] = None,
    output: Optional[str] = None,
) -> ExitCode:
    """Runs the configured sweep; exit 6 when a recorded chi beats an evaluable main_bound."""
    config = load_config(config_path)
    limits = resolve_limits(config.limits, node_budget=node_budget, time_budget=time_budget)
    config = config.model_copy(update={"limits": limits, "output": output or config.output})
    result = run_conjecture_sweep(config)
    records_at, summary_at = write_sweep(result, config.output)
    violations = [r.index for r in result.records if r.bound_violations]
    emit({
        "records": len(result.records),
        "budget_exhausted": sum(not r.complete for r in result.records),
        "bound_violations": violations,
        "records_file": records_at,
        "summary_file": summary_at,
        "table": [
            {"k": c.k, "ell": c.ell, "graphs": c.graphs, "max_chi": c.max_chi, "main_bound": c.bound}
            for c in result.table
        ],
    })
    return ExitCode.FALSIFICATION if violations else ExitCode.OK


def handle_replay(records_path: str, output: Optional[str] = None) -> ExitCode:
    verdicts = replay_records(records_path)
    failed = [v for v in verdicts if not v.ok]
    emit({"records": len(verdicts), "failed": len(failed), "verdicts": [v.to_json() for v in verdicts]}, output)
    return ExitCode.OK if not failed else ExitCode.PRECONDITION
