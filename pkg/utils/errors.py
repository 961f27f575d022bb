"""
Exception hierarchy shared by every package of the workbench.
"""
from typing import Any, Optional


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class DimensionMismatchError(WorkbenchError):
    """Shapes of matrices or vectors do not fit together."""


class EquivarianceError(WorkbenchError):
    """A map fails to commute with the group action it claims to respect."""


class SupportError(WorkbenchError):
    """A function or map is not supported where it is required to be."""


class ModelError(WorkbenchError):
    """A structure violates its own axioms (associativity, d^2 = 0, ...)."""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class WindowError(WorkbenchError):
    """The requested degree window cannot hold or certify the computation."""


class StructureMismatchError(WorkbenchError):
    """Incompatible sides, algebras or bigradings."""


class ConfigError(WorkbenchError):
    """Scenario, group table or model config failed to parse or validate."""

    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if key is not None:
            location.append(f"key '{key}'")
        prefix = f"[{', '.join(location)}] " if location else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key
