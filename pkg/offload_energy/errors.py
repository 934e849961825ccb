"""
Exception hierarchy shared by every subpackage.

Errors that reject caller input also derive from ``ValueError`` so code that
already guards numeric routines with ``except ValueError`` keeps working.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class OffloadEnergyError(Exception):
    """Base class for all package errors."""


class PlanValidationError(OffloadEnergyError, ValueError):
    """An experiment plan failed validation; ``errors`` lists every problem."""

    def __init__(self, errors: Iterable[str]):
        self.errors: list[str] = list(errors)
        super().__init__("; ".join(self.errors) or "invalid plan")


class TraceParseError(OffloadEnergyError, ValueError):
    """A trace line could not be parsed."""

    def __init__(self, source: str, line_no: int, message: str):
        self.source = source
        self.line_no = line_no
        self.message = message
        super().__init__(f"{source}:{line_no}: {message}")


class SegmentationError(OffloadEnergyError, ValueError):
    """Phase markers do not fit the series they are applied to."""


class CalibrationError(OffloadEnergyError, ValueError):
    """A fit could not be carried out with the given inputs."""


class InfeasibleTargetsError(CalibrationError):
    """Requested targets cannot be reached; ``achievable`` holds the reachable range."""

    def __init__(self, message: str, achievable: dict | None = None):
        self.achievable = dict(achievable or {})
        if self.achievable:
            parts = ", ".join(f"{k}: [{lo:.4g}, {hi:.4g}]" for k, (lo, hi) in self.achievable.items())
            message = f"{message} (achievable {parts})"
        super().__init__(message)


class UnknownFigureError(OffloadEnergyError, ValueError):
    """Plot-data figure id is not known."""

    def __init__(self, figure: str, valid_ids: Sequence[str]):
        self.figure = figure
        self.valid_ids = list(valid_ids)
        super().__init__(f"unknown figure '{figure}'; valid ids: {', '.join(self.valid_ids)}")


class InsufficientCoverageError(OffloadEnergyError, ValueError):
    """Results do not cover every cell a figure needs."""

    def __init__(self, figure: str, missing: Sequence[str]):
        self.figure = figure
        self.missing = list(missing)
        super().__init__(f"figure '{figure}' is missing cells: {', '.join(self.missing)}")
