"""Run configuration and the flat ``key = value`` config file format."""

import os
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from twolayer_swe.common.errors import ConfigError
from twolayer_swe.config.environment import get_env_config
from twolayer_swe.config.logger_config import LoggerConfig as Logger
from twolayer_swe.core.parameters import EigenMethod
from twolayer_swe.driver.limiters import Limiter
from twolayer_swe.scenarios.catalog import build_scenario
from twolayer_swe.scenarios.models import ScenarioSpec, from_flat


class RunMode(str, Enum):
    RUN = "run"
    CONVERGE = "converge"
    WELL_BALANCED_SUITE = "well-balanced-suite"


def _parse_value(raw: str) -> Any:
    text = raw.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "'\"":
        return text[1:-1]
    lowered = text.lower()
    if lowered == "none":
        return None
    if lowered in ("true", "false"):
        return lowered == "true"
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def _format_value(value: Any) -> str:
    if isinstance(value, Enum):
        value = value.value
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(_format_value(v) for v in value)
    text = str(value)
    # strings that would read back as another type are quoted
    if isinstance(value, str) and _parse_value(text) != text:
        return f"\"{text}\""
    return text


def parse_config_text(text: str) -> Dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment and ``none`` is null."""
    values: Dict[str, Any] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ConfigError(f"Line {number}: expected 'key = value', got {line.strip()!r}")
        key, raw = content.split("=", 1)
        key = key.strip()
        if not key or any(not part for part in key.split(".")):
            raise ConfigError(f"Line {number}: malformed key {key!r}")
        if key in values:
            raise ConfigError(f"Line {number}: duplicate key {key!r}")
        values[key] = _parse_value(raw)
    return values


def load_config_file(path: Path) -> Dict[str, Any]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    Logger.log("Loaded config file", level="INFO", path=str(path))
    return parse_config_text(text)


def dump_config_text(values: Dict[str, Any]) -> str:
    return "".join(f"{key} = {_format_value(value)}\n" for key, value in values.items())


class RunConfig(BaseModel):
    """One CLI invocation: what to run, at which settings, and where to write."""
    model_config = ConfigDict(extra="forbid")

    mode: RunMode = RunMode.RUN
    scenario: Optional[str] = None
    overrides: Dict[str, Any] = Field(default_factory=dict)
    n_cells: Optional[int] = Field(None, ge=4)
    eigen_method: Optional[EigenMethod] = None
    limiter: Optional[Limiter] = None
    t_final: Optional[float] = Field(None, gt=0)
    frames: Optional[int] = Field(None, ge=1)
    output_dir: Optional[str] = None
    resolutions: List[int] = Field(default_factory=lambda: list(get_env_config()['sweep']['resolutions']))
    reference_n: int = Field(default_factory=lambda: get_env_config()['sweep']['reference_n'])
    workers: int = Field(default_factory=lambda: get_env_config()['sweep']['workers'], ge=1)
    dt_max: Optional[float] = Field(None, gt=0)

    @field_validator("resolutions", mode="before")
    @classmethod
    def _split_resolutions(cls, value):
        if isinstance(value, int):
            return [value]
        if isinstance(value, str):
            return [int(part) for part in value.split(",") if part.strip()]
        return value

    @classmethod
    def from_sources(cls, file_values: Optional[Dict[str, Any]] = None,
                     flags: Optional[Dict[str, Any]] = None) -> "RunConfig":
        """Merge config-file values and CLI flags; flags win, unset flags are ignored.

        File keys that are not RunConfig fields are scenario overrides.
        """
        own = set(cls.model_fields) - {"overrides"}
        data: Dict[str, Any] = {}
        overrides: Dict[str, Any] = {}
        for key, value in (file_values or {}).items():
            if key in own:
                data[key] = value
            else:
                overrides[key] = value
        data.update({k: v for k, v in (flags or {}).items() if v is not None})
        data["overrides"] = overrides
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"Invalid run configuration: {e}") from e

    def scenario_spec(self) -> ScenarioSpec:
        """Named scenario with overrides, or an inline scenario built from the overrides alone."""
        if self.scenario:
            spec = build_scenario(self.scenario, self.overrides)
        else:
            if "name" not in self.overrides:
                raise ConfigError("Give a scenario name or an inline scenario with a 'name' key")
            try:
                spec = from_flat(self.overrides)
            except ValueError as e:
                raise ConfigError(f"Invalid inline scenario: {e}") from e

        updates = {
            "n_cells": self.n_cells,
            "eigen_method": self.eigen_method.value if self.eigen_method else None,
            "limiter": self.limiter.value if self.limiter else None,
            "t_final": self.t_final,
            "n_frames": self.frames,
        }
        updates = {k: v for k, v in updates.items() if v is not None}
        if not updates:
            return spec
        try:
            return spec.with_overrides(updates)
        except ValueError as e:
            raise ConfigError(f"Invalid scenario settings: {e}") from e

    def output_path(self, name: str) -> Path:
        """Output directory for this run, created and checked for write access."""
        root = self.output_dir or os.path.join(get_env_config()['output']['root'], name)
        path = Path(root)
        try:
            path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigError(f"Cannot create output directory {path}: {e}") from e
        if not os.access(path, os.W_OK):
            raise ConfigError(f"Output directory {path} is not writable")
        return path
