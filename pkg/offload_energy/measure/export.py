# offload_energy/measure/export.py
"""
Write simulated results in the canonical trace formats and read experiment
directories back.

An experiment directory holds ``markers.log``, ``resource.csv``, one energy
source (``rapl.log`` for server-class clients, ``power_meter.log`` for
single-board clients) and ``experiment.yaml`` describing the cell.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from ..simulate.engine import ScenarioResult
from ..simulate.traces import MeasurementSeries
from .readers import (
    BYTES_PER_MB, DEFAULT_RAPL_MAX_RANGE, RESOURCE_COLUMNS, read_power_meter_log, read_rapl_log,
    read_resource_log,
)
from .segment import PhaseMarkerLog, read_phase_markers

logger = logging.getLogger(__name__)

MARKERS_FILE = "markers.log"
RAPL_FILE = "rapl.log"
POWER_METER_FILE = "power_meter.log"
RESOURCE_FILE = "resource.csv"
EXPERIMENT_FILE = "experiment.yaml"
METER_VOLTS = 1.0                  # current column carries watts, so V * I reads back exactly
POWER_METER_TIERS = ("rpi",)


def _f(x) -> str:
    return repr(float(x))


def rapl_lines(energy: MeasurementSeries, offset: int = 0, max_range: int = DEFAULT_RAPL_MAX_RANGE) -> str:
    """Cumulative joules as a wrapping microjoule counter starting at ``offset``."""
    micro = np.rint(energy.values * 1e6).astype(np.int64)
    counters = (int(offset) + micro) % int(max_range)
    return "".join(f"{_f(t)} {int(c)}\n" for t, c in zip(energy.t, counters))


def power_meter_lines(power: MeasurementSeries, end: float, volts: float = METER_VOLTS) -> str:
    """
    Meter log with a closing reading at ``end`` so the last interval is covered.
    """
    t = list(power.t)
    p = list(power.values)
    if t and end > t[-1]:
        t.append(end)
        p.append(p[-1])
    return "".join(f"{_f(tt)} {_f(volts)} {_f(pp / volts)}\n" for tt, pp in zip(t, p))


def resource_lines(traces: dict[str, MeasurementSeries]) -> str:
    cpu = traces["cpu_pct"]
    rows = ['"' + '","'.join(RESOURCE_COLUMNS) + '"\n']
    for i, t in enumerate(cpu.t):
        rows.append(",".join([
            _f(t), _f(cpu.values[i]), "0.0", _f(traces["mem_mb"].values[i]),
            _f(traces["disk_read_mbps"].values[i] * BYTES_PER_MB),
            _f(traces["disk_write_mbps"].values[i] * BYTES_PER_MB),
        ]) + "\n")
    return "".join(rows)


def export_traces(result: ScenarioResult, directory: str | Path,
                  max_range: int = DEFAULT_RAPL_MAX_RANGE) -> Path:
    """
    Write one simulated cell as an experiment directory.

    Returns:
        The directory written
    """
    if not result.traces:
        raise ValueError(f"S{result.scenario.id} {result.platform}/{result.workload} has no traces to export")
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    prof = result.profile
    markers = PhaseMarkerLog.from_edges(prof.phases, prof.edges)
    (out / MARKERS_FILE).write_text(markers.to_text(), encoding="utf-8", newline="\n")
    (out / RESOURCE_FILE).write_text(resource_lines(result.traces), encoding="utf-8", newline="\n")

    tier = result.client_tier
    if tier in POWER_METER_TIERS:
        energy_file = POWER_METER_FILE
        text = power_meter_lines(result.traces["power_w"], prof.edges[-1])
        offset = 0
    else:
        energy_file = RAPL_FILE
        offset = int(np.random.default_rng(result.seed).integers(0, max_range))
        text = rapl_lines(result.traces["energy_j"], offset, max_range)
    (out / energy_file).write_text(text, encoding="utf-8", newline="\n")

    meta = {
        "scenario_id": result.scenario.id,
        "client": result.scenario.client,
        "server": result.scenario.server,
        "platform": result.platform,
        "workload": result.workload,
        "kind": result.kind,
        "seed": result.seed,
        "energy_source": energy_file,
        "rapl_max_range": int(max_range),
        "ram_power_share": result.ram_power_share,
    }
    (out / EXPERIMENT_FILE).write_text(yaml.safe_dump(meta, sort_keys=False), encoding="utf-8")
    logger.info("exported %s to %s", result.scenario.label, out)
    return out


@dataclass
class Experiment:
    """Traces and markers read back from an experiment directory."""
    path: Path
    series: dict[str, MeasurementSeries]
    markers: PhaseMarkerLog
    meta: dict = field(default_factory=dict)


def is_experiment_dir(path: str | Path) -> bool:
    p = Path(path)
    return any((p / f).exists() for f in (RAPL_FILE, POWER_METER_FILE, RESOURCE_FILE))


def read_experiment(directory: str | Path, markers_path: str | Path | None = None) -> Experiment:
    """
    Parse every trace present in ``directory``.

    Raises:
        FileNotFoundError: no marker log
    """
    d = Path(directory)
    mpath = Path(markers_path) if markers_path else d / MARKERS_FILE
    if not mpath.exists():
        raise FileNotFoundError(f"marker log not found: {mpath}")
    meta = {}
    if (d / EXPERIMENT_FILE).exists():
        meta = yaml.safe_load((d / EXPERIMENT_FILE).read_text(encoding="utf-8")) or {}

    series: dict[str, MeasurementSeries] = {}
    if (d / RESOURCE_FILE).exists():
        series.update(read_resource_log(d / RESOURCE_FILE))
    if (d / POWER_METER_FILE).exists():
        series["power_w"] = read_power_meter_log(d / POWER_METER_FILE)
    if (d / RAPL_FILE).exists():
        series["energy_j"] = read_rapl_log(d / RAPL_FILE, int(meta.get("rapl_max_range", DEFAULT_RAPL_MAX_RANGE)))
    if "power_w" not in series and "energy_j" not in series:
        raise FileNotFoundError(f"no energy trace ({RAPL_FILE} or {POWER_METER_FILE}) in {d}")
    return Experiment(d, series, read_phase_markers(mpath), meta)
