"""Brute-force time-stepped integration of a result's power profile."""

from __future__ import annotations

from typing import Literal

import numpy as np

from ..utils.filters import step_lookup
from .engine import ScenarioResult


def _uniform_grid(total: float, dt: float) -> tuple[np.ndarray, np.ndarray]:
    n = int(np.ceil(total / dt - 1e-9))
    starts = np.arange(n) * dt
    return starts, np.minimum(starts + dt, total)


def _aligned_grid(edges, dt: float) -> tuple[np.ndarray, np.ndarray]:
    starts, ends = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        if b <= a:
            continue
        n = max(1, int(np.ceil((b - a) / dt - 1e-9)))
        k = np.arange(n)
        w = (b - a) / n
        starts.append(a + k * w)
        ends.append(np.where(k == n - 1, b, a + (k + 1) * w))
    return np.concatenate(starts), np.concatenate(ends)


def integrate_oracle(result: ScenarioResult, dt: float,
                     method: Literal["left", "trapezoid"] = "left", aligned: bool = False) -> float:
    """
    Integrate the client power of ``result`` by time stepping.

    Args:
        result: Scenario result whose power profile is integrated
        dt: Step (s). With ``aligned`` every phase is cut into equal steps no
            longer than ``dt``, so no step straddles a phase boundary.
        method: ``left`` (left-Riemann) or ``trapezoid`` (mean of the values
            at both ends of a step, left limit at the right end)

    Returns:
        Energy in joules; equals the closed-form total for aligned steps and
        converges to it as ``dt`` goes to 0 otherwise.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    prof = result.profile
    if len(prof.power) == 0:
        raise ValueError("result has an empty power trace")
    total = prof.edges[-1]
    if total <= 0:
        return 0.0
    starts, ends = _aligned_grid(prof.edges, dt) if aligned else _uniform_grid(total, dt)
    widths = ends - starts
    left = step_lookup(prof.edges, prof.power, starts)
    if method == "left":
        return float(np.sum(left * widths))
    if method == "trapezoid":
        right = step_lookup(prof.edges, prof.power, ends, right_limit=True)
        return float(np.sum(0.5 * (left + right) * widths))
    raise ValueError(f"unknown method '{method}'")
