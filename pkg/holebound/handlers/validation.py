"""Input validation for command handlers, and the mapping from failures to exit codes."""

from __future__ import annotations

import json
import logging
from enum import IntEnum
from typing import Callable, Iterable, Optional

from holebound.config import ConfigError
from holebound.engines.transcript import FalsificationCandidate, PreconditionViolation
from holebound.formats import GraphFormatError, read_graph
from holebound.graph import Graph, GraphInputError
from holebound.solvers import BudgetExhaustedError
from holebound.storage import dumps_json, read_text, write_text
from holebound.structures import StructureError

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    IO_ERROR = 1
    USAGE = 2
    PARSE_ERROR = 3
    PRECONDITION = 4
    BUDGET_EXHAUSTED = 5
    FALSIFICATION = 6


class UsageError(ValueError):
    """Raised when command arguments are inconsistent in a way argparse cannot see."""


def exit_code_for(exc: BaseException) -> ExitCode:
    if isinstance(exc, FalsificationCandidate):
        return ExitCode.FALSIFICATION
    if isinstance(exc, BudgetExhaustedError):
        return ExitCode.BUDGET_EXHAUSTED
    if isinstance(exc, (PreconditionViolation, StructureError, GraphInputError)):
        return ExitCode.PRECONDITION
    if isinstance(exc, (GraphFormatError, json.JSONDecodeError, ConfigError)):
        return ExitCode.PARSE_ERROR
    if isinstance(exc, UsageError):
        return ExitCode.USAGE
    return ExitCode.IO_ERROR


def run_guarded(handler: Callable[..., ExitCode], *args, **kwargs) -> int:
    """Runs a handler; exceptions become exit codes and a one-line message on the log."""
    try:
        return int(handler(*args, **kwargs))
    except Exception as exc:
        code = exit_code_for(exc)
        if code is ExitCode.IO_ERROR and not isinstance(exc, OSError):
            logger.exception("unexpected failure in %s", getattr(handler, "__name__", handler))
        else:
            logger.warning("%s: %s", type(exc).__name__, exc)
        transcript = getattr(exc, "transcript", None)
        output = kwargs.get("output")
        if transcript is not None and output:
            write_text(output, dumps_json({"kind": "falsification", "transcript": transcript.to_json()}))
        return int(code)


def load_graph(path: str) -> Graph:
    return read_graph(path)


def load_json(location: Optional[str]) -> dict:
    """A JSON object from a path or S3 URI; a missing file is an I/O error, bad JSON a parse error."""
    if location is None:
        raise UsageError("a structure file is required")
    text = read_text(location)
    if text is None:
        raise FileNotFoundError(location)
    data = json.loads(text)
    if not isinstance(data, dict):
        raise StructureError(f"{location}: expected a JSON object")
    return data


def parse_params(pairs: Optional[Iterable[str]]) -> dict[str, int]:
    """``key=value`` engine parameters; values are integers, ``true``/``false`` map to 1/0."""
    params: dict[str, int] = {}
    for pair in pairs or ():
        key, sep, raw = pair.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"parameter {pair!r} is not key=value")
        raw = raw.strip().lower()
        if raw in ("true", "false"):
            params[key] = int(raw == "true")
            continue
        try:
            params[key] = int(raw)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer, got {raw!r}") from None
    return params


def require_params(params: dict[str, int], engine: str, *names: str) -> list[int]:
    missing = [n for n in names if n not in params]
    if missing:
        raise UsageError(f"engine {engine} needs parameters {', '.join(missing)}")
    return [params[n] for n in names]


def emit(payload: dict, output: Optional[str] = None) -> None:
    """Prints canonical JSON and writes it to ``output`` when given."""
    text = dumps_json(payload)
    if output:
        write_text(output, text)
    print(text, end="")
