"""Scenario pipeline, matrix runner, synthetic traces and the integration oracle."""

from .engine import (
    CellFailure, MatrixResult, ScenarioResult, cell_seed, estimate_phases, find, run_matrix, run_scenario,
)
from .oracle import integrate_oracle
from .traces import METRICS, MeasurementSeries, PowerProfile, power_profile, synthesize_traces

__all__ = [
    "ScenarioResult", "CellFailure", "MatrixResult", "estimate_phases", "cell_seed",
    "run_scenario", "run_matrix", "find", "integrate_oracle",
    "MeasurementSeries", "METRICS", "PowerProfile", "power_profile", "synthesize_traces",
]
