"""Run archive storage and retrieval."""

from .reader import get_results, get_series, list_runs
from .writer import RunArchive

__all__ = ["RunArchive", "list_runs", "get_results", "get_series"]
