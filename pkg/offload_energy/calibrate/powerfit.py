# offload_energy/calibrate/powerfit.py
"""Least-squares fit of the linear power model to paired power/CPU samples."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import CalibrationError
from ..simulate.traces import MeasurementSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PowerFit:
    p_idle: float
    p_busy: float
    residual: float         # RMS of the fit residuals (W)
    n_samples: int
    clamped: bool = False


def _paired(power, cpu) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(power, MeasurementSeries) and isinstance(cpu, MeasurementSeries):
        p = power.values
        # percent on the power grid
        c = cpu.values if np.array_equal(power.t, cpu.t) else np.interp(power.t, cpu.t, cpu.values)
        return p, c / 100.0
    p = np.asarray(getattr(power, "values", power), dtype=float)
    u = np.asarray(getattr(cpu, "values", cpu), dtype=float)
    if isinstance(cpu, MeasurementSeries):
        u = u / 100.0
    if p.shape != u.shape:
        raise CalibrationError(f"power and utilization lengths differ ({p.size} vs {u.size})")
    return p, u


def fit_power_params(power, cpu) -> PowerFit:
    """
    Fit P = p_idle + u (p_busy - p_idle).

    Args:
        power: Power samples (W), a ``power_w`` series or an array
        cpu: CPU load, a ``cpu_pct`` series (percent) or an array of fractions in [0, 1]

    Returns:
        PowerFit; when the data would give p_busy < p_idle (or p_idle < 0) the
        parameters are clamped and ``clamped`` is set.
    """
    p, u = _paired(power, cpu)
    if p.size < 2:
        raise CalibrationError("need at least 2 samples to fit power parameters")
    u = np.clip(u, 0.0, 1.0)
    if np.ptp(u) < 1e-9:
        raise CalibrationError("degenerate input: all samples share one utilization level")

    A = np.vstack([np.ones_like(u), u]).T
    sol, _, _, _ = np.linalg.lstsq(A, p, rcond=None)
    p_idle, slope = float(sol[0]), float(sol[1])
    resid = p - (p_idle + slope * u)
    clamped = False
    if slope < 0:
        p_idle, slope, clamped = float(np.mean(p)), 0.0, True
    if p_idle < 0:
        p_idle, clamped = 0.0, True
    if clamped:
        logger.warning("power fit clamped to p_idle=%.4g W, p_busy=%.4g W", p_idle, p_idle + slope)
        resid = p - (p_idle + slope * u)
    return PowerFit(p_idle, p_idle + slope, float(np.sqrt(np.mean(resid ** 2))), int(p.size), clamped)
