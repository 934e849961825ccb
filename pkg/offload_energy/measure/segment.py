# offload_energy/measure/segment.py
"""
Phase markers, energy integration and per-phase segmentation of traces.

Marker log format: ``phase_name start_s end_s`` per line.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping, Sequence

import numpy as np
from scipy.integrate import trapezoid

from ..energy.phases import PhaseEstimate
from ..errors import SegmentationError, TraceParseError
from ..simulate.traces import MeasurementSeries
from .readers import _numbered_fields, _to_float

logger = logging.getLogger(__name__)

Rule = Literal["trapezoid", "hold"]
_EPS = 1e-9


@dataclass(frozen=True, slots=True)
class PhaseMarker:
    phase: str
    start: float
    end: float

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class PhaseMarkerLog:
    """Ordered, non-overlapping phase windows."""
    markers: tuple[PhaseMarker, ...]

    def __post_init__(self):
        prev = None
        for m in self.markers:
            if not m.start < m.end:
                raise SegmentationError(f"marker '{m.phase}': start {m.start} is not before end {m.end}")
            if prev is not None and m.start < prev.end - _EPS:
                raise SegmentationError(f"marker '{m.phase}' overlaps '{prev.phase}'")
            prev = m

    def __iter__(self) -> Iterator[PhaseMarker]:
        return iter(self.markers)

    def __len__(self) -> int:
        return len(self.markers)

    @property
    def span(self) -> tuple[float, float]:
        if not self.markers:
            raise SegmentationError("empty marker log")
        return self.markers[0].start, self.markers[-1].end

    @classmethod
    def from_edges(cls, phases: Sequence[str], edges: Sequence[float]) -> "PhaseMarkerLog":
        """Markers for consecutive phases; zero-length phases are left out."""
        return cls(tuple(PhaseMarker(p, float(a), float(b))
                         for p, a, b in zip(phases, edges[:-1], edges[1:]) if b > a))

    def to_text(self) -> str:
        return "".join(f"{m.phase} {m.start!r} {m.end!r}\n" for m in self.markers)


def read_phase_markers(stream) -> PhaseMarkerLog:
    out = []
    for line_no, (phase, a, b), name in _numbered_fields(stream, 3):
        start = _to_float(name, line_no, a, "start")
        end = _to_float(name, line_no, b, "end")
        if not start < end:
            raise TraceParseError(name, line_no, f"start {start} is not before end {end}")
        out.append(PhaseMarker(phase, start, end))
    return PhaseMarkerLog(tuple(out))


# --- integration --------------------------------------------------------

def _trapezoid(t: np.ndarray, v: np.ndarray, a: float, b: float) -> float:
    inner = (t > a) & (t < b)
    tt = np.concatenate([[a], t[inner], [b]])
    vv = np.concatenate([[np.interp(a, t, v)], v[inner], [np.interp(b, t, v)]])
    return float(trapezoid(vv, tt))


def _hold(t: np.ndarray, v: np.ndarray, a: float, b: float) -> float:
    # each sample holds until the next one
    cuts = np.concatenate([[a], t[(t > a) & (t < b)], [b]])
    idx = np.searchsorted(t, cuts[:-1], side="right") - 1
    return float(np.sum(v[idx] * np.diff(cuts)))


def integrate_energy(series: MeasurementSeries, span: tuple[float, float] | None = None,
                     rule: Rule = "trapezoid") -> float:
    """
    Integrate an instantaneous series over ``span``.

    Args:
        series: Power (W) or any rate-like series
        span: (start, end) in seconds, within the sampled range; whole series if None
        rule: ``trapezoid`` (exact for piecewise-linear signals; span ends are
            linearly interpolated) or ``hold`` (each sample holds until the next)

    Returns:
        Integral in value-seconds (joules for a power series)
    """
    if len(series) < 2:
        raise SegmentationError(f"{series.metric}: need at least 2 samples, got {len(series)}")
    t, v = series.t, series.values
    a, b = span if span is not None else series.span
    if a < t[0] - _EPS or b > t[-1] + _EPS:
        raise SegmentationError(f"span [{a}, {b}] outside {series.metric} samples [{t[0]}, {t[-1]}]")
    if b < a:
        raise SegmentationError(f"span end {b} before start {a}")
    a, b = max(a, t[0]), min(b, t[-1])
    if b == a:
        return 0.0
    if rule == "trapezoid":
        return _trapezoid(t, v, a, b)
    if rule == "hold":
        return _hold(t, v, a, b)
    raise ValueError(f"unknown integration rule '{rule}'")


def _mean_over(series: MeasurementSeries | None, a: float, b: float) -> float:
    if series is None or not len(series):
        return 0.0
    t = series.t
    a = max(a, t[0])
    if b <= a:
        return 0.0
    # the last sample holds to the end of the window
    return _hold(t, series.values, a, b) / (b - a)


def _cumulative_at(series: MeasurementSeries, x: float) -> float:
    return float(np.interp(x, series.t, series.values))


# --- segmentation -------------------------------------------------------

def segment_phases(series: Mapping[str, MeasurementSeries], markers: PhaseMarkerLog,
                   power_rule: Rule = "hold") -> list[PhaseEstimate]:
    """
    Cut traces into per-phase estimates.

    Energy comes from the cumulative ``energy_j`` series when present (difference
    of the interpolated counter at the marker edges), otherwise from
    ``power_w`` integrated with ``power_rule``. Mean CPU and disk rates are
    time-weighted means over each window.
    """
    energy = series.get("energy_j")
    power = series.get("power_w")
    source = energy if energy is not None and len(energy) else power
    if source is None or len(source) < 2:
        raise SegmentationError("need an energy_j or power_w series with at least 2 samples")

    lo, hi = source.span
    first, last = markers.span
    if first < lo - _EPS or last > hi + _EPS:
        raise SegmentationError(f"markers [{first}, {last}] outside {source.metric} span [{lo}, {hi}]")

    out = []
    for m in markers:
        if source is energy:
            e = _cumulative_at(energy, m.end) - _cumulative_at(energy, m.start)
        else:
            e = integrate_energy(power, (m.start, m.end), rule=power_rule)
        out.append(PhaseEstimate(
            phase=m.phase,
            duration=m.duration,
            client_energy=max(e, 0.0),
            mean_client_cpu_util=_mean_over(series.get("cpu_pct"), m.start, m.end) / 100.0,
            disk_read_rate=_mean_over(series.get("disk_read_mbps"), m.start, m.end),
            disk_write_rate=_mean_over(series.get("disk_write_mbps"), m.start, m.end),
        ))
        logger.debug("segment %s [%.3f, %.3f]: %.3f J", m.phase, m.start, m.end, e)
    return out
