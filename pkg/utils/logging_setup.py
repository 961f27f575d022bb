"""
Logging configuration for the command line.
"""
import logging
import sys

from config.settings import LOG_LEVEL


def configure_logging(level: str = LOG_LEVEL) -> None:
    """Log to stderr so stdout carries only the report."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
