"""Small numeric helpers and logging setup."""

from .filters import mean_preserving_jitter, step_lookup
from .log import setup_logging

__all__ = ["mean_preserving_jitter", "step_lookup", "setup_logging"]
