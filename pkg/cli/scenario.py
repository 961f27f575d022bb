"""
Scenario files and the report model.

A scenario is an INI file:

    [scenario]
    name = model-p3-d1-c2
    kind = crossed-model
    suites = all
    seed = 7
    window = 0:4

    [model]
    bundled = p3-d1-c2

``[group]`` (finite-group) takes ``builtin = s3, d4`` or ``table = path`` plus ``p``.
``[model]`` takes ``bundled = name`` or the keys of config.models_config.
"""
from __future__ import annotations

import configparser
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from config.models_config import BUNDLED_MODELS
from config.settings import SCENARIOS_DIR, VERIFY_CONFIG
from exactla.field import MAX_PRIME, is_prime
from utils.errors import ConfigError
from utils.helpers import parse_window

ScenarioKind = Literal["finite-group", "crossed-model", "dg-engine", "emss", "monoidal"]


class Scenario(BaseModel):
    name: str
    kind: ScenarioKind
    suites: List[str] = Field(default_factory=list)
    seed: int = VERIFY_CONFIG["default_seed"]
    window: Optional[Tuple[int, int]] = None
    margin: Optional[int] = None
    p: Optional[int] = None
    groups: List[str] = Field(default_factory=list)
    group_table: Optional[str] = None
    model: Dict[str, str] = Field(default_factory=dict)

    @field_validator("window")
    @classmethod
    def _window_order(cls, value):
        if value is not None and (value[0] < 0 or value[0] > value[1]):
            raise ValueError("window must be lo:hi with 0 <= lo <= hi")
        return value

    @field_validator("p")
    @classmethod
    def _prime(cls, value):
        if value is not None and (not is_prime(value) or value > MAX_PRIME):
            raise ValueError(f"p = {value} is not a prime below 2^31")
        return value

    def echo(self) -> Dict[str, Any]:
        data = self.model_dump(exclude_none=True)
        if self.window is not None:
            data["window"] = f"{self.window[0]}:{self.window[1]}"
        return data


class CheckOutcome(BaseModel):
    id: str
    status: Literal["pass", "fail", "skipped"]
    checked: int = 0
    millis: int = 0
    witness: Optional[Any] = None
    reason: Optional[str] = None
    details: Optional[Any] = None


class Report(BaseModel):
    scenario: Dict[str, Any]
    checks: List[CheckOutcome]
    normalizations: Dict[str, str]
    version: str

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


def _split(value: str) -> List[str]:
    return [tok.strip() for tok in value.replace("\n", ",").split(",") if tok.strip()]


def resolve_scenario_path(name_or_path: str) -> Path:
    """A path, or the name of a bundled scenario under data/scenarios."""
    path = Path(name_or_path)
    if path.exists():
        return path
    bundled = SCENARIOS_DIR / f"{name_or_path}.ini"
    if bundled.exists():
        return bundled
    raise ConfigError(f"no scenario file or bundled scenario named '{name_or_path}'")


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.ParsingError as exc:
        errors = getattr(exc, "errors", None)
        line = errors[0][0] if errors else getattr(exc, "lineno", None)
        raise ConfigError(f"malformed scenario: {str(exc).splitlines()[0]}", line=line)
    except configparser.Error as exc:
        raise ConfigError(str(exc).splitlines()[0], line=getattr(exc, "lineno", None))
    if not parser.has_section("scenario"):
        raise ConfigError("missing [scenario] section")
    head = dict(parser["scenario"])
    data: Dict[str, Any] = {
        "name": head.get("name", Path(source).stem),
        "kind": head.get("kind"),
        "suites": _split(head.get("suites", "")),
    }
    for key in ("seed", "margin", "p"):
        if key in head:
            try:
                data[key] = int(head[key])
            except ValueError:
                raise ConfigError(f"expected an integer, got '{head[key]}'", key=key)
    if "window" in head:
        window = parse_window(head["window"])
        if window is None:
            raise ConfigError(f"expected lo:hi, got '{head['window']}'", key="window")
        data["window"] = window

    if parser.has_section("group"):
        group = dict(parser["group"])
        data["groups"] = _split(group.get("builtin", ""))
        if "table" in group:
            data["group_table"] = group["table"]
        if "p" in group:
            try:
                data["p"] = int(group["p"])
            except ValueError:
                raise ConfigError(f"expected an integer, got '{group['p']}'", key="p")
    if parser.has_section("model"):
        model = dict(parser["model"])
        if "bundled" in model:
            if model["bundled"] not in BUNDLED_MODELS:
                raise ConfigError(f"unknown bundled model '{model['bundled']}'", key="bundled")
            model = {**BUNDLED_MODELS[model["bundled"]], "name": model["bundled"]}
        data["model"] = model

    try:
        scenario = Scenario(**data)
    except ValidationError as exc:
        err = exc.errors()[0]
        raise ConfigError(err["msg"], key=".".join(str(x) for x in err["loc"]) or None)
    if scenario.kind == "finite-group" and not (scenario.groups or scenario.group_table):
        raise ConfigError("finite-group scenarios need [group] builtin or table", key="group")
    if scenario.kind == "finite-group" and scenario.p is None:
        raise ConfigError("finite-group scenarios need a prime p", key="p")
    if scenario.kind in ("crossed-model", "emss", "monoidal") and not scenario.model:
        raise ConfigError(f"{scenario.kind} scenarios need a [model] section", key="model")
    if scenario.kind == "dg-engine" and scenario.p is None:
        raise ConfigError("dg-engine scenarios need a prime p", key="p")
    return scenario


def load_scenario(name_or_path: str) -> Scenario:
    path = resolve_scenario_path(name_or_path)
    return parse_scenario(path.read_text(), str(path))
