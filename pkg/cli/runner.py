"""
Scenario execution: build the contexts a scenario's kind allows, run every
requested check and collect a report.
"""
from __future__ import annotations

import json
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from cli.catalog import CATALOG, SUITE_KINDS, checks_for_kind
from cli.scenario import CheckOutcome, Report, Scenario
from config.models_config import BUNDLED_GROUP_PAIRS
from config.settings import BASE_DIR, GROUPS_DIR, REPORT_CONFIG, RESOLUTION_CONFIG
from dgcore.checks import DgContext, MonoidalContext
from emss.checks import EmssContext
from smoothrep.checks import GroupPairContext
from smoothrep.groups import FinGroupDatum, builtin_pairs
from yoneda.checks import ModelContext
from yoneda.model import CrossedModelDatum
from utils.errors import ConfigError, ModelError, WorkbenchError
from utils.helpers import parse_group_table, parse_model_config

logger = logging.getLogger(__name__)

DEFAULT_WINDOWS = {"dg": (0, 6), "monoidal": (0, 2), "emss": (0, 4)}


def to_plain(value: Any) -> Any:
    """JSON-ready copy: numpy scalars and arrays to Python, tuple keys to 'a,b'."""
    if isinstance(value, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def _groups(scenario: Scenario) -> List[FinGroupDatum]:
    pairs = builtin_pairs()
    groups = []
    for name in scenario.groups:
        if name not in pairs:
            raise ConfigError(f"unknown builtin group pair '{name}', expected one of {', '.join(BUNDLED_GROUP_PAIRS)}",
                              key="builtin")
        groups.append(pairs[name])
    if scenario.group_table:
        path = Path(scenario.group_table)
        if not path.is_absolute():
            # bare file names refer to the bundled tables
            path = BASE_DIR / path if (BASE_DIR / path).exists() else GROUPS_DIR / path
        if not path.exists():
            raise ConfigError(f"group table {path} not found", key="table")
        table = parse_group_table(path)
        try:
            G = FinGroupDatum.from_table(table["mul"], table["subgroup"], path.stem)
            G.validate()
        except ModelError as exc:
            raise ConfigError(f"group table {path.name}: {exc}", key="table")
        groups.append(G)
    return groups


def _model(scenario: Scenario) -> CrossedModelDatum:
    entries = {k: v for k, v in scenario.model.items() if k != "name"}
    try:
        return CrossedModelDatum.from_config(parse_model_config(entries), scenario.model.get("name", scenario.name))
    except ModelError as exc:
        raise ConfigError(f"model does not validate: {exc}", key="model")


class ScenarioRunner:
    """Lazily builds one context per suite; a degree-0 scenario may range over several group pairs."""

    def __init__(self, scenario: Scenario, seed: Optional[int] = None, window: Optional[Tuple[int, int]] = None):
        self.scenario = scenario
        self.seed = scenario.seed if seed is None else seed
        self.window = window or scenario.window
        self.margin = scenario.margin if scenario.margin is not None else RESOLUTION_CONFIG["margin"]
        self._contexts: Dict[str, List[Any]] = {}
        self._model: Optional[CrossedModelDatum] = None

    def model(self) -> CrossedModelDatum:
        if self._model is None:
            self._model = _model(self.scenario)
        return self._model

    def _window(self, suite: str) -> Tuple[int, int]:
        return self.window or DEFAULT_WINDOWS[suite]

    def contexts(self, suite: str) -> List[Any]:
        if suite not in self._contexts:
            builders: Dict[str, Callable[[], List[Any]]] = {
                "degree0": lambda: [GroupPairContext(G, self.scenario.p) for G in _groups(self.scenario)],
                "model": lambda: [ModelContext(self.model(), self.seed)],
                "dg": lambda: [DgContext(self.scenario.p, self._window("dg"), self.margin)],
                "monoidal": lambda: [MonoidalContext(self.model(), self._window("monoidal"), self.margin)],
                "emss": lambda: [EmssContext(self.model(), self._window("emss"), self.margin, self.seed)],
            }
            self._contexts[suite] = builders[suite]()
        return self._contexts[suite]

    def requested(self) -> List[str]:
        suites = self.scenario.suites
        if not suites or suites == ["all"]:
            return checks_for_kind(self.scenario.kind) if suites else []
        unknown = [c for c in suites if c not in CATALOG]
        if unknown:
            raise ConfigError(f"unknown check '{unknown[0]}'", key="suites")
        if len(set(suites)) != len(suites):
            raise ConfigError("a check is requested twice", key="suites")
        return list(suites)

    def run_check(self, check_id: str) -> CheckOutcome:
        entry = CATALOG[check_id]
        if self.scenario.kind not in SUITE_KINDS[entry.suite]:
            return CheckOutcome(id=check_id, status="skipped",
                                reason=f"needs a {' or '.join(SUITE_KINDS[entry.suite])} scenario")
        start = time.perf_counter()
        success, checked, witness, details = True, 0, None, {}
        for ctx in self.contexts(entry.suite):
            tag = getattr(getattr(ctx, "group", None), "name", None)
            try:
                result = entry.func(ctx)
            except WorkbenchError as exc:
                result = {"success": False, "checked": 0,
                          "witness": {"error": f"{type(exc).__name__}: {exc}", "at": getattr(exc, "witness", None)}}
            checked += result.get("checked", 0)
            if "details" in result:
                details[tag or "result"] = result["details"]
            if not result["success"]:
                success = False
                witness = result.get("witness")
                if tag and isinstance(witness, dict):
                    witness = {"group": tag, **witness}
                break
        millis = int((time.perf_counter() - start) * 1000) if REPORT_CONFIG["timings"] else 0
        logger.info("%s %s (%d checked)", "✅" if success else "❌", check_id, checked)
        return CheckOutcome(
            id=check_id,
            status="pass" if success else "fail",
            checked=checked,
            millis=millis,
            witness=to_plain(witness),
            details=to_plain(details) or None,
        )


def run_scenario(scenario: Scenario, seed: Optional[int] = None, window: Optional[Tuple[int, int]] = None) -> Report:
    """Run every requested check; a failing check never stops the others.

    Raises:
        ConfigError: the scenario references unknown checks or its parameters do not validate.
    """
    runner = ScenarioRunner(scenario, seed, window)
    # the parameters of the scenario kind are validated before any check is selected
    for suite, kinds in SUITE_KINDS.items():
        if scenario.kind in kinds:
            runner.contexts(suite)
    requested = runner.requested()
    outcomes = [runner.run_check(c) for c in requested]
    echo = scenario.echo()
    echo["seed"] = runner.seed
    if runner.window is not None:
        echo["window"] = f"{runner.window[0]}:{runner.window[1]}"
    return Report(
        scenario=to_plain(echo),
        checks=outcomes,
        normalizations=dict(REPORT_CONFIG["normalizations"]),
        version=REPORT_CONFIG["version"],
    )


def report_json(report: Report) -> str:
    data = report.model_dump(exclude_none=True)
    return json.dumps(data, sort_keys=True, indent=REPORT_CONFIG["indent"], ensure_ascii=False) + "\n"
