"""Experiment configuration: pydantic schema, TOML/JSON loading and budget overrides."""

from __future__ import annotations

import json
import logging
import os
import tomllib
from typing import Literal, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from holebound.solvers import DEFAULT_MEMO_ENTRIES, SolverLimits
from holebound.storage import read_text

logger = logging.getLogger(__name__)

SWEEP_WORKERS = int(os.environ.get("HOLEBOUND_SWEEP_WORKERS", "4"))

_ENV_OVERRIDES = {
    "node_budget": ("HOLEBOUND_NODE_BUDGET", int),
    "time_budget": ("HOLEBOUND_TIME_BUDGET", float),
    "memo_entries": ("HOLEBOUND_MEMO_ENTRIES", int),
}


class ConfigError(ValueError):
    """Raised when a config file or environment override is invalid."""


class LimitsConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    node_budget: Optional[int] = Field(default=None, ge=0)
    time_budget: Optional[float] = Field(default=None, ge=0)
    memo_entries: int = Field(default=DEFAULT_MEMO_ENTRIES, ge=0)

    def solver_limits(self) -> SolverLimits:
        return SolverLimits(node_budget=self.node_budget, time_budget=self.time_budget)


class GeneratorConfig(BaseModel):
    """One sampling source: ``count`` graphs with n drawn uniformly from [n_min, n_max]."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    model: Literal["gnp", "chordal"]
    n_min: int = Field(ge=1)
    n_max: int = Field(ge=1)
    p: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    width: Optional[int] = Field(default=None, ge=1)
    count: int = Field(default=1, ge=0)

    @model_validator(mode="after")
    def _check_model_fields(self) -> GeneratorConfig:
        if self.n_min > self.n_max:
            raise ValueError(f"n_min={self.n_min} exceeds n_max={self.n_max}")
        if self.model == "gnp" and self.p is None:
            raise ValueError("gnp generator needs an edge probability p")
        if self.model == "chordal":
            if self.width is None:
                raise ValueError("chordal generator needs a width")
            if self.width > self.n_min:
                raise ValueError(f"chordal width={self.width} exceeds n_min={self.n_min}")
        return self


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    generators: list[GeneratorConfig] = Field(min_length=1)
    ks: list[int] = Field(min_length=1)
    ells: list[int] = Field(min_length=1)
    limits: LimitsConfig = LimitsConfig()
    seed: int = Field(default=0, ge=0, lt=2**64)
    output: str = "sweep-output"
    workers: int = Field(default=SWEEP_WORKERS, ge=1)
    record_timings: bool = False

    @model_validator(mode="after")
    def _check_cells(self) -> ExperimentConfig:
        if any(k < 1 for k in self.ks):
            raise ValueError(f"every k must be at least 1, got {self.ks}")
        if any(ell < 4 for ell in self.ells):
            raise ValueError(f"every ell must be at least 4, got {self.ells}")
        return self


def parse_config(text: str, fmt: str) -> ExperimentConfig:
    """Validates config text; ``fmt`` is ``"toml"`` or ``"json"``."""
    try:
        data = tomllib.loads(text) if fmt == "toml" else json.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"config is not valid {fmt}: {e}") from e
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"invalid experiment config: {e}") from e


def load_config(location: str, s3_client=None) -> ExperimentConfig:
    """Reads a ``.toml`` or ``.json`` experiment config from a path or S3 URI."""
    ext = os.path.splitext(location)[1].lower()
    if ext not in (".toml", ".json"):
        raise ConfigError(f"{location}: config must be .toml or .json, got {ext!r}")
    text = read_text(location, s3_client=s3_client)
    if text is None:
        raise ConfigError(f"{location}: config not found")
    config = parse_config(text, ext[1:])
    logger.info("loaded config %s: %d generators, ks=%s ells=%s", location, len(config.generators), config.ks, config.ells)
    return config


def apply_env_overrides(limits: LimitsConfig, environ: Optional[Mapping[str, str]] = None) -> LimitsConfig:
    """Budgets from HOLEBOUND_NODE_BUDGET / HOLEBOUND_TIME_BUDGET / HOLEBOUND_MEMO_ENTRIES win over the file."""
    environ = os.environ if environ is None else environ
    updates = {}
    for field, (name, kind) in _ENV_OVERRIDES.items():
        raw = environ.get(name)
        if raw is None or raw == "":
            continue
        try:
            updates[field] = kind(raw)
        except ValueError:
            raise ConfigError(f"{name}={raw!r} is not a valid {kind.__name__}") from None
    if not updates:
        return limits
    try:
        return LimitsConfig.model_validate({**limits.model_dump(), **updates})
    except ValidationError as e:
        raise ConfigError(f"invalid budget override: {e}") from e


def resolve_limits(
    limits: Optional[LimitsConfig] = None,
    *,
    node_budget: Optional[int] = None,
    time_budget: Optional[float] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> LimitsConfig:
    """CLI flag > environment > config file > built-in default."""
    resolved = apply_env_overrides(limits or LimitsConfig(), environ)
    flags = {k: v for k, v in (("node_budget", node_budget), ("time_budget", time_budget)) if v is not None}
    if not flags:
        return resolved
    try:
        return LimitsConfig.model_validate({**resolved.model_dump(), **flags})
    except ValidationError as e:
        raise ConfigError(f"invalid budget flag: {e}") from e
