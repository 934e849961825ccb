# offload_energy/simulate/traces.py
"""Sampled measurement series and synthetic trace generation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from ..energy.phases import PhaseEstimate
from ..models.catalog import Constants, NodeSpec
from ..utils.filters import mean_preserving_jitter

Metric = Literal["power_w", "energy_j", "cpu_pct", "mem_mb", "disk_read_mbps", "disk_write_mbps"]
Source = Literal["simulated", "rapl", "power_meter", "resource_log"]
METRICS: tuple[str, ...] = ("power_w", "cpu_pct", "mem_mb", "disk_read_mbps", "disk_write_mbps")


@dataclass(frozen=True, eq=False)
class MeasurementSeries:
    """
    Timestamped samples of one metric.

    ``energy_j`` series are cumulative; every other metric is instantaneous.
    """
    metric: str
    t: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    source: str = "simulated"

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("timestamps and values must be 1-D arrays of equal length")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise ValueError(f"{self.metric}: timestamps must be strictly increasing")
        if np.any(v < 0):
            raise ValueError(f"{self.metric}: negative values")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.t.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasurementSeries):
            return NotImplemented
        return (self.metric == other.metric and self.source == other.source
                and np.array_equal(self.t, other.t) and np.array_equal(self.values, other.values))

    @property
    def span(self) -> tuple[float, float]:
        if not len(self):
            raise ValueError(f"{self.metric}: empty series has no span")
        return float(self.t[0]), float(self.t[-1])

    def to_frame(self):
        import pandas as pd
        return pd.DataFrame({"t": self.t, self.metric: self.values})


@dataclass(frozen=True, slots=True)
class PowerProfile:
    """Noiseless piecewise-constant client power: phase ``k`` holds ``power[k]`` on [edges[k], edges[k+1])."""
    edges: tuple[float, ...]
    power: tuple[float, ...]
    phases: tuple[str, ...]

    def energy(self) -> float:
        return math.fsum(p * (b - a) for p, a, b in zip(self.power, self.edges[:-1], self.edges[1:]))


def power_profile(phases: Sequence[PhaseEstimate]) -> PowerProfile:
    edges = [0.0]
    for p in phases:
        edges.append(edges[-1] + p.duration)
    return PowerProfile(tuple(edges), tuple(p.mean_power for p in phases), tuple(p.phase for p in phases))


def _phase_grid(start: float, duration: float, period: float) -> tuple[np.ndarray, float]:
    """Sample-interval start times covering one phase, and the interval width."""
    n = max(1, int(math.ceil(duration / period - 1e-9)))
    width = duration / n
    return start + width * np.arange(n), width


def synthesize_traces(phases: Sequence[PhaseEstimate], client: NodeSpec, seed: int | np.random.SeedSequence,
                      constants: Constants = Constants()) -> dict[str, MeasurementSeries]:
    """
    1 Hz (``constants.sample_period``) client traces for a phase skeleton.

    Every phase is split into equal sample intervals; each interval carries
    the phase mean times a mean-preserving jitter in +-``trace_jitter``. A
    sample's timestamp is its interval start, so a left-Riemann sum over the
    intervals returns each phase's closed-form energy. The cumulative
    ``energy_j`` series is that sum sampled at interval ends, starting at 0.
    Zero-duration phases contribute no samples.
    """
    rng = np.random.default_rng(seed)
    jitter = constants.trace_jitter
    cpu_cap = 100.0
    ram_mb = client.ram * 1024.0

    ts, widths = [], []
    cols: dict[str, list[np.ndarray]] = {m: [] for m in METRICS}
    start = 0.0
    for p in phases:
        if p.duration <= 0:
            continue
        grid, width = _phase_grid(start, p.duration, constants.sample_period)
        n = grid.size
        ts.append(grid)
        widths.append(np.full(n, width))
        means = {
            "power_w": p.mean_power,
            "cpu_pct": 100.0 * p.mean_client_cpu_util,
            "mem_mb": p.mem_fraction * ram_mb,
            "disk_read_mbps": p.disk_read_rate,
            "disk_write_mbps": p.disk_write_rate,
        }
        for m in METRICS:
            mult = 1.0 + mean_preserving_jitter(rng, n, jitter)
            vals = means[m] * mult
            if m == "cpu_pct":
                vals = np.clip(vals, 0.0, cpu_cap)
            cols[m].append(vals)
        start += p.duration

    if not ts:
        empty = np.zeros(0)
        out = {m: MeasurementSeries(m, empty, empty) for m in METRICS}
        out["energy_j"] = MeasurementSeries("energy_j", empty, empty)
        return out

    t = np.concatenate(ts)
    w = np.concatenate(widths)
    out = {m: MeasurementSeries(m, t, np.concatenate(cols[m])) for m in METRICS}
    e = np.concatenate([[0.0], np.cumsum(out["power_w"].values * w)])
    out["energy_j"] = MeasurementSeries("energy_j", np.append(t, start), e)
    return out
