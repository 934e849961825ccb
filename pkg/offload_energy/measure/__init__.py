"""Trace parsing, phase segmentation and trace export."""

from .export import Experiment, export_traces, is_experiment_dir, read_experiment
from .readers import (
    DEFAULT_RAPL_MAX_RANGE, RaplSample, parse_rapl_samples, read_bandwidth_log, read_power_meter_log,
    read_rapl_log, read_resource_log, unwrap_deltas,
)
from .segment import (
    PhaseMarker, PhaseMarkerLog, integrate_energy, read_phase_markers, segment_phases,
)

__all__ = [
    "DEFAULT_RAPL_MAX_RANGE", "RaplSample", "parse_rapl_samples", "unwrap_deltas", "read_rapl_log",
    "read_power_meter_log", "read_resource_log", "read_bandwidth_log",
    "PhaseMarker", "PhaseMarkerLog", "read_phase_markers", "integrate_energy", "segment_phases",
    "Experiment", "export_traces", "read_experiment", "is_experiment_dir",
]
