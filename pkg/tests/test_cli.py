"""
Scenario parsing, the check catalog, report determinism and exit codes.
"""
import json

import pytest

from cli.catalog import CATALOG, anchor_manifest, checks_for_kind, list_checks
from cli.main import main
from cli.runner import report_json, run_scenario, to_plain
from cli.scenario import load_scenario, parse_scenario
from config.models_config import BUNDLED_GROUP_PAIRS
from config.settings import SCENARIOS_DIR
from smoothrep.groups import builtin_pairs
from utils.errors import ConfigError

DG_SCENARIO = """
[scenario]
name = dg-small
kind = dg-engine
suites = dg.dg_axioms, dg.tor_oracle, dg.ext_oracle
seed = 3
window = 0:2
p = 2
"""


def _write(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestCatalog:
    def test_ids_are_unique_and_prefixed_by_suite(self):
        entries = list_checks()
        ids = [e["id"] for e in entries]
        assert len(ids) == len(set(ids))
        for e in entries:
            assert e["id"].startswith(e["suite"] + ".")
            assert e["description"]

    def test_every_check_carries_an_anchor(self):
        by_anchor = {}
        for e in list_checks():
            assert e["anchors"], e["id"]
            for anchor in e["anchors"]:
                by_anchor.setdefault(anchor, []).append(e["suite"])
        assert by_anchor["prop:J'-J"] == ["degree0"]
        assert by_anchor["cohdelta"] == ["emss"]
        assert by_anchor["maindual"] == ["model"]

    def test_anchors_match_the_manifest(self):
        manifest = anchor_manifest()
        assert len(manifest) == len(set(manifest))
        used = {a for e in CATALOG.values() for a in e.anchors}
        assert sorted(used) == sorted(manifest)

    def test_checks_for_kind(self):
        crossed = checks_for_kind("crossed-model")
        assert "model.main_duality" in crossed
        assert "emss.em_convergence" in crossed
        assert not any(c.startswith("dg.") for c in crossed)
        assert all(c.startswith("emss.") for c in checks_for_kind("emss"))
        assert len(checks_for_kind("finite-group")) == 18


class TestScenarioParsing:
    @pytest.mark.parametrize("path", sorted(SCENARIOS_DIR.glob("*.ini")), ids=lambda p: p.stem)
    def test_bundled_scenarios_load(self, path):
        scenario = load_scenario(path.stem)
        assert scenario.name == path.stem
        assert scenario.seed == 20240601

    def test_window_is_echoed_as_lo_hi(self):
        scenario = parse_scenario(DG_SCENARIO)
        assert scenario.window == (0, 2)
        assert scenario.echo()["window"] == "0:2"
        assert scenario.suites == ["dg.dg_axioms", "dg.tor_oracle", "dg.ext_oracle"]

    def test_missing_kind(self):
        with pytest.raises(ConfigError) as err:
            parse_scenario("[scenario]\nname = x\n")
        assert err.value.key == "kind"

    def test_malformed_file_reports_a_line(self):
        with pytest.raises(ConfigError) as err:
            parse_scenario("[scenario]\nkind = dg-engine\nthis line has no separator\n")
        assert err.value.line == 3

    def test_missing_section(self):
        with pytest.raises(ConfigError):
            parse_scenario("kind = dg-engine\n")

    @pytest.mark.parametrize("extra, key", [
        ("p = 4", "p"),
        ("p = two", "p"),
        ("window = 3:1", "window"),
        ("window = 0-3", "window"),
    ])
    def test_bad_values(self, extra, key):
        with pytest.raises(ConfigError) as err:
            parse_scenario(f"[scenario]\nkind = dg-engine\n{extra}\n")
        assert err.value.key == key

    def test_finite_group_needs_groups_and_prime(self):
        with pytest.raises(ConfigError) as err:
            parse_scenario("[scenario]\nkind = finite-group\n[group]\np = 2\n")
        assert err.value.key == "group"
        with pytest.raises(ConfigError) as err:
            parse_scenario("[scenario]\nkind = finite-group\n[group]\nbuiltin = s3\n")
        assert err.value.key == "p"

    def test_unknown_bundled_model(self):
        with pytest.raises(ConfigError) as err:
            parse_scenario("[scenario]\nkind = crossed-model\n[model]\nbundled = nope\n")
        assert err.value.key == "bundled"

    def test_unknown_scenario_name(self):
        with pytest.raises(ConfigError):
            load_scenario("no-such-scenario")


class TestRunner:
    def test_empty_suites_give_an_empty_report(self):
        report = run_scenario(parse_scenario("[scenario]\nkind = dg-engine\np = 3\nsuites =\n"))
        assert report.checks == []
        assert report.passed

    def test_unknown_check_is_a_config_error(self):
        scenario = parse_scenario("[scenario]\nkind = dg-engine\np = 3\nsuites = dg.nope\n")
        with pytest.raises(ConfigError):
            run_scenario(scenario)

    def test_check_of_another_kind_is_skipped(self):
        scenario = parse_scenario("[scenario]\nkind = dg-engine\np = 3\nsuites = degree0.hecke\n")
        (outcome,) = run_scenario(scenario).checks
        assert outcome.status == "skipped"
        assert "finite-group" in outcome.reason

    def test_missing_group_table(self):
        scenario = parse_scenario("[scenario]\nkind = finite-group\n[group]\ntable = nowhere.txt\np = 2\n")
        with pytest.raises(ConfigError) as err:
            run_scenario(scenario)
        assert err.value.key == "table"

    def test_unknown_builtin_pair(self):
        assert set(builtin_pairs()) == set(BUNDLED_GROUP_PAIRS)
        scenario = parse_scenario("[scenario]\nkind = finite-group\n[group]\nbuiltin = a5\np = 2\n")
        with pytest.raises(ConfigError) as err:
            run_scenario(scenario)
        assert err.value.key == "builtin"

    def test_model_is_validated_without_suites(self):
        scenario = parse_scenario(
            "[scenario]\nkind = crossed-model\n[model]\np = 3\nd = 1\n"
            "C.order = 2\nC.mul = 0 1; 1 0\nC.action.0 = 1\nC.action.1 = 0\n"
        )
        assert scenario.suites == []
        with pytest.raises(ConfigError) as err:
            run_scenario(scenario)
        assert err.value.key == "model"

    def test_report_is_deterministic(self):
        scenario = parse_scenario(DG_SCENARIO)
        first = report_json(run_scenario(scenario))
        second = report_json(run_scenario(scenario))
        assert first == second
        data = json.loads(first)
        assert set(data) == {"scenario", "checks", "normalizations", "version"}
        assert [c["id"] for c in data["checks"]] == scenario.suites
        assert all(c["status"] == "pass" and c["millis"] == 0 for c in data["checks"])

    def test_overrides_are_echoed(self):
        report = run_scenario(parse_scenario(DG_SCENARIO), seed=99, window=(0, 1))
        assert report.scenario["seed"] == 99
        assert report.scenario["window"] == "0:1"

    def test_to_plain_flattens_tuple_keys(self):
        assert to_plain({(0, 1): 2, "a": [(1, 2)]}) == {"0,1": 2, "a": [[1, 2]]}


class TestMain:
    def test_list_checks(self, capsys):
        assert main(["--list-checks"]) == 0
        listed = json.loads(capsys.readouterr().out)
        assert [e["id"] for e in listed] == list(CATALOG)

    def test_report_written_to_file(self, tmp_path):
        out = tmp_path / "report.json"
        assert main([_write(tmp_path, DG_SCENARIO), "--report", str(out)]) == 0
        assert json.loads(out.read_text())["scenario"]["name"] == "dg-small"

    def test_config_errors_exit_2(self, tmp_path, capsys):
        assert main([_write(tmp_path, "[scenario]\nkind = nothing\n")]) == 2
        assert "error" in json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert main([_write(tmp_path, DG_SCENARIO), "--window", "2:1"]) == 2
        assert main([]) == 2

    @pytest.mark.slow
    @pytest.mark.parametrize("name", [
        "s3-degree0", "dg-engine-exterior", "model-p3-d1-c2", "model-p3-d2-c2", "model-p2-d2-c3",
    ])
    def test_bundled_scenarios_pass(self, name, capsys):
        assert main([name]) == 0
        report = json.loads(capsys.readouterr().out)
        assert all(c["status"] == "pass" for c in report["checks"])
