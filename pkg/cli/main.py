"""
verify <scenario> [--report out.json] [--seed N] [--window lo:hi] [--list-checks]

Exit code 0 when every check passes, 1 on any failure, 2 on a config error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from cli.catalog import list_checks
from cli.runner import report_json, run_scenario
from cli.scenario import load_scenario
from utils.errors import ConfigError
from utils.helpers import parse_window
from utils.logging_setup import configure_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="verify", description="Run a verification scenario and emit a JSON report.")
    parser.add_argument("scenario", nargs="?", help="scenario file, or the name of a bundled scenario")
    parser.add_argument("--report", help="write the report here instead of stdout")
    parser.add_argument("--seed", type=int, help="override the scenario seed")
    parser.add_argument("--window", help="override the scenario window, as lo:hi")
    parser.add_argument("--list-checks", action="store_true", help="print the check catalog and exit")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        configure_logging(args.log_level)
    else:
        configure_logging()

    if args.list_checks:
        print(json.dumps(list_checks(), indent=2, ensure_ascii=False))
        return 0
    if not args.scenario:
        parser.print_usage(sys.stderr)
        return 2

    try:
        window = None
        if args.window is not None:
            window = parse_window(args.window)
            if window is None or window[0] < 0:
                raise ConfigError(f"expected lo:hi with 0 <= lo <= hi, got '{args.window}'", key="--window")
        scenario = load_scenario(args.scenario)
        report = run_scenario(scenario, args.seed, window)
    except ConfigError as exc:
        logger.error("❌ %s", exc)
        print(json.dumps({"error": str(exc), "line": exc.line, "key": exc.key}, sort_keys=True), file=sys.stderr)
        return 2

    text = report_json(report)
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
        logger.info("✅ report written to %s", args.report)
    else:
        sys.stdout.write(text)
    failed = [c.id for c in report.checks if c.status == "fail"]
    if failed:
        logger.warning("⚠️ %d check(s) failed: %s", len(failed), ", ".join(failed))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
