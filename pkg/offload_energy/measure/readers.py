# offload_energy/measure/readers.py
"""
Parsers for the canonical trace formats.

* RAPL log: ``timestamp_s counter_uj`` per line, cumulative microjoules that
  wrap at ``max_range``.
* Power-meter log: ``timestamp_s volts amps`` per line.
* Resource log: ``epoch,cpu_usr_pct,cpu_sys_pct,mem_used_mb,disk_read_bps,disk_write_bps``;
  lines starting with a quote character are headers and skipped.
* Bandwidth log: ``timestamp_s bandwidth_MBps`` per line.

Fields are split on any whitespace (commas for the resource log); the field
count is strict. Blank lines are ignored. Every other malformed line raises
:class:`TraceParseError` with its line number.
"""

from __future__ import annotations

import io
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np

from ..errors import TraceParseError
from ..simulate.traces import MeasurementSeries

logger = logging.getLogger(__name__)

# Published range of the package energy counter on common Intel parts
DEFAULT_RAPL_MAX_RANGE = 262_143_328_850
BYTES_PER_MB = 1024.0 * 1024.0
RESOURCE_COLUMNS = ("epoch", "cpu_usr_pct", "cpu_sys_pct", "mem_used_mb", "disk_read_bps", "disk_write_bps")


@dataclass(frozen=True, slots=True)
class RaplSample:
    timestamp: float
    counter: int            # microjoules, cumulative
    max_range: int

    def __post_init__(self):
        if self.max_range <= 0:
            raise ValueError("max_range must be > 0")
        if not 0 <= self.counter <= self.max_range:
            raise ValueError(f"counter {self.counter} outside [0, {self.max_range}]")


def _open_text(stream) -> tuple[IO, str, bool]:
    if isinstance(stream, (str, Path)):
        return open(stream, "rb"), str(stream), True
    return stream, getattr(stream, "name", "<stream>"), False


def _numbered_lines(stream) -> Iterator[tuple[int, str, str]]:
    """(line_no, stripped text, source name); bytes are decoded as UTF-8 one line at a time."""
    f, name, owned = _open_text(stream)
    try:
        for line_no, line in enumerate(f, start=1):
            if isinstance(line, bytes):
                try:
                    line = line.decode("utf-8")
                except UnicodeDecodeError as exc:
                    raise TraceParseError(name, line_no, f"invalid UTF-8 at byte {exc.start}") from None
            yield line_no, line.strip(), name
    finally:
        if owned:
            f.close()


def _numbered_fields(stream, n_fields: int, sep: str | None = None) -> Iterator[tuple[int, list[str], str]]:
    for line_no, text, name in _numbered_lines(stream):
        if not text:
            continue
        parts = text.split(sep) if sep else text.split()
        if len(parts) != n_fields:
            raise TraceParseError(name, line_no, f"expected {n_fields} fields, got {len(parts)}")
        yield line_no, parts, name


def _to_float(name: str, line_no: int, token: str, what: str) -> float:
    try:
        v = float(token)
    except ValueError:
        raise TraceParseError(name, line_no, f"bad {what} '{token}'") from None
    if not np.isfinite(v):
        raise TraceParseError(name, line_no, f"non-finite {what} '{token}'")
    return v


def _check_increasing(name: str, line_no: int, prev: float | None, t: float):
    if prev is not None and t <= prev:
        raise TraceParseError(name, line_no, f"timestamp {t} does not advance past {prev}")


# --- RAPL ---------------------------------------------------------------

def parse_rapl_samples(stream, max_range: int = DEFAULT_RAPL_MAX_RANGE) -> list[RaplSample]:
    out: list[RaplSample] = []
    prev_t = None
    for line_no, (ts, ctr), name in _numbered_fields(stream, 2):
        t = _to_float(name, line_no, ts, "timestamp")
        try:
            counter = int(ctr)
        except ValueError:
            raise TraceParseError(name, line_no, f"bad counter '{ctr}'") from None
        _check_increasing(name, line_no, prev_t, t)
        try:
            out.append(RaplSample(t, counter, int(max_range)))
        except ValueError as exc:
            raise TraceParseError(name, line_no, str(exc)) from None
        prev_t = t
    return out


def unwrap_deltas(counters: Iterable[int], max_range: int) -> np.ndarray:
    """
    Per-interval energy (uJ) from a cumulative counter.

    A decrease means the counter wrapped: the delta is max_range - prev + curr.
    """
    c = [int(x) for x in counters]
    deltas = [curr - prev if curr >= prev else max_range - prev + curr for prev, curr in zip(c[:-1], c[1:])]
    return np.asarray(deltas, dtype=np.int64)


def read_rapl_log(stream, max_range: int = DEFAULT_RAPL_MAX_RANGE) -> MeasurementSeries:
    """
    Cumulative energy series in joules, starting at 0 at the first sample.

    Fewer than two samples carry no delta and give an empty series.
    """
    samples = parse_rapl_samples(stream, max_range)
    if len(samples) < 2:
        logger.debug("RAPL log has %d sample(s); no energy deltas", len(samples))
        return MeasurementSeries("energy_j", np.zeros(0), np.zeros(0), source="rapl")
    t = np.array([s.timestamp for s in samples], dtype=float)
    deltas = unwrap_deltas((s.counter for s in samples), int(max_range))
    energy = np.concatenate([[0.0], np.cumsum(deltas) / 1e6])
    return MeasurementSeries("energy_j", t, energy, source="rapl")


# --- power meter --------------------------------------------------------

def read_power_meter_log(stream) -> MeasurementSeries:
    """Power series P = V * I in watts."""
    t, p = [], []
    prev_t = None
    for line_no, (ts, vs, amps), name in _numbered_fields(stream, 3):
        tt = _to_float(name, line_no, ts, "timestamp")
        v = _to_float(name, line_no, vs, "voltage")
        i = _to_float(name, line_no, amps, "current")
        if v < 0 or i < 0:
            raise TraceParseError(name, line_no, "negative voltage or current")
        _check_increasing(name, line_no, prev_t, tt)
        prev_t = tt
        t.append(tt)
        p.append(v * i)
    return MeasurementSeries("power_w", np.array(t, dtype=float), np.array(p, dtype=float), source="power_meter")


# --- resource log -------------------------------------------------------

def read_resource_log(stream) -> dict[str, MeasurementSeries]:
    """
    CPU, memory and disk series from a resource log.

    cpu% = usr + sys; disk rates converted from B/s to MB/s (2**20 bytes).
    """
    rows: list[list[float]] = []
    prev_t = None
    for line_no, text, name in _numbered_lines(stream):
        text = text.lstrip("\ufeff")
        if not text or text.startswith(('"', "'")):
            continue
        parts = text.split(",")
        if len(parts) != len(RESOURCE_COLUMNS):
            raise TraceParseError(name, line_no, f"expected {len(RESOURCE_COLUMNS)} fields, got {len(parts)}")
        vals = [_to_float(name, line_no, c.strip(), col) for c, col in zip(parts, RESOURCE_COLUMNS)]
        if any(v < 0 for v in vals[1:]):
            raise TraceParseError(name, line_no, "negative resource value")
        _check_increasing(name, line_no, prev_t, vals[0])
        prev_t = vals[0]
        rows.append(vals)

    a = np.array(rows, dtype=float).reshape(-1, len(RESOURCE_COLUMNS))
    t = a[:, 0]
    return {
        "cpu_pct": MeasurementSeries("cpu_pct", t, a[:, 1] + a[:, 2], source="resource_log"),
        "mem_mb": MeasurementSeries("mem_mb", t, a[:, 3], source="resource_log"),
        "disk_read_mbps": MeasurementSeries("disk_read_mbps", t, a[:, 4] / BYTES_PER_MB, source="resource_log"),
        "disk_write_mbps": MeasurementSeries("disk_write_mbps", t, a[:, 5] / BYTES_PER_MB, source="resource_log"),
    }


# --- bandwidth ----------------------------------------------------------

def read_bandwidth_log(stream) -> tuple[np.ndarray, np.ndarray]:
    """(timestamps, MB/s samples) from a bandwidth log."""
    t, bw = [], []
    prev_t = None
    for line_no, (ts, b), name in _numbered_fields(stream, 2):
        tt = _to_float(name, line_no, ts, "timestamp")
        v = _to_float(name, line_no, b, "bandwidth")
        if v < 0:
            raise TraceParseError(name, line_no, f"negative bandwidth {v}")
        _check_increasing(name, line_no, prev_t, tt)
        prev_t = tt
        t.append(tt)
        bw.append(v)
    return np.array(t, dtype=float), np.array(bw, dtype=float)


def as_stream(text: str) -> io.StringIO:
    return io.StringIO(text)
