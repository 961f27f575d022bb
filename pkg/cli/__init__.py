"""
Command-line surface: scenarios in, JSON reports out.
"""
from cli.catalog import CATALOG, list_checks
from cli.runner import run_scenario
from cli.scenario import Report, Scenario, load_scenario, parse_scenario

__all__ = ["CATALOG", "list_checks", "run_scenario", "Report", "Scenario", "load_scenario", "parse_scenario"]
