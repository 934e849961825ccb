"""Fitting routines and calibration runs."""

from .anchors import AnchorRow, anchor_residuals, anchor_rows, fit_anchor_scales
from .bandwidth import BandwidthFit, apply_bandwidth, ingest_bandwidth_log
from .fractions import PHASE_GROUPS, FractionFit, fit_phase_fractions, group_energies, phase_shares
from .pipeline import (
    CalibrationRecord, CalibrationResult, calibrate_from_dir, calibrate_reference_defaults,
    write_calibration_report,
)
from .powerfit import PowerFit, fit_power_params
from .workfit import apply_work_coefficients, fit_work_coefficients, work_fit_residuals

__all__ = [
    "fit_work_coefficients", "apply_work_coefficients", "work_fit_residuals",
    "PowerFit", "fit_power_params",
    "PHASE_GROUPS", "FractionFit", "fit_phase_fractions", "group_energies", "phase_shares",
    "BandwidthFit", "ingest_bandwidth_log", "apply_bandwidth",
    "CalibrationRecord", "CalibrationResult", "calibrate_reference_defaults", "calibrate_from_dir",
    "write_calibration_report",
    "AnchorRow", "anchor_rows", "anchor_residuals", "fit_anchor_scales",
]
