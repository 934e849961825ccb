# offload_energy/report/rows.py
"""
Flat per-cell report rows and the results CSV.

CSV dialect: comma separated, '.' decimal, header row, LF line endings.
Floats are written with full round-trip precision; an absent savings value
is an empty field.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

import pandas as pd

from ..energy.phases import PhaseEstimate
from ..models.catalog import PHASES, WORKLOAD_KINDS
from ..simulate.engine import ScenarioResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReportRow:
    """
    One matrix cell.

    ``phase_times`` and ``phase_energies`` follow the canonical phase order;
    phases a scenario does not run hold 0.
    """
    scenario_id: int
    client: str
    server: str
    platform: str
    workload: str
    phase_times: tuple[float, ...]
    phase_energies: tuple[float, ...]
    total_time: float
    total_client_energy: float
    savings_vs_baseline: float | None
    processing_cpu_util: float
    ram_energy: float
    source: str = "simulated"

    @property
    def is_offloading(self) -> bool:
        return self.client != self.server

    @property
    def kind(self) -> str:
        return WORKLOAD_KINDS.get(self.workload, "batch")

    def phase_energy(self, phase: str) -> float:
        return self.phase_energies[PHASES.index(phase)]

    def phase_time(self, phase: str) -> float:
        return self.phase_times[PHASES.index(phase)]

    @property
    def cpu_energy(self) -> float:
        return self.total_client_energy - self.ram_energy

    def scaled(self, k: float) -> "ReportRow":
        """Every energy multiplied by ``k``; percentages unchanged."""
        return replace(self, phase_energies=tuple(e * k for e in self.phase_energies),
                       total_client_energy=self.total_client_energy * k, ram_energy=self.ram_energy * k)


def columns() -> list[str]:
    cols = ["scenario_id", "client", "server", "platform", "workload"]
    for p in PHASES:
        cols += [f"{p}_time_s", f"{p}_energy_j"]
    return cols + ["total_time_s", "total_client_energy_j", "savings_vs_baseline_pct",
                   "processing_cpu_util", "ram_energy_j", "source"]


COLUMNS: tuple[str, ...] = tuple(columns())


def savings_percent(offload: ReportRow, baseline: ReportRow) -> float:
    """100 (baseline - offload) / baseline for the same client, platform and workload."""
    if (offload.client, offload.platform, offload.workload) != (baseline.client, baseline.platform, baseline.workload):
        raise ValueError(f"baseline {baseline.client}/{baseline.platform}/{baseline.workload} does not match "
                         f"{offload.client}/{offload.platform}/{offload.workload}")
    if baseline.is_offloading:
        raise ValueError(f"S{baseline.scenario_id} is not a non-offloading baseline")
    if baseline.total_client_energy == 0:
        raise ValueError("baseline energy is 0")
    return 100.0 * (baseline.total_client_energy - offload.total_client_energy) / baseline.total_client_energy


def _phase_vectors(phases: Sequence[PhaseEstimate]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    by_name = {p.phase: p for p in phases}
    times = tuple(float(by_name[p].duration) if p in by_name else 0.0 for p in PHASES)
    energies = tuple(float(by_name[p].client_energy) if p in by_name else 0.0 for p in PHASES)
    return times, energies


def make_row(scenario_id: int, client: str, server: str, platform: str, workload: str,
             phases: Sequence[PhaseEstimate], ram_power_share: float = 0.0, source: str = "simulated") -> ReportRow:
    times, energies = _phase_vectors(phases)
    proc = next((p for p in phases if p.phase == "data_processing"), None)
    total_e = math.fsum(energies)
    return ReportRow(
        scenario_id=int(scenario_id), client=client, server=server, platform=platform, workload=workload,
        phase_times=times, phase_energies=energies,
        total_time=math.fsum(times), total_client_energy=total_e,
        savings_vs_baseline=None,
        processing_cpu_util=float(proc.mean_client_cpu_util) if proc else 0.0,
        ram_energy=total_e * ram_power_share, source=source,
    )


def with_savings(rows: Sequence[ReportRow]) -> list[ReportRow]:
    """Fill savings_vs_baseline wherever the matching baseline row is present."""
    baselines = {(r.client, r.platform, r.workload): r for r in rows if not r.is_offloading}
    out = []
    for r in rows:
        b = baselines.get((r.client, r.platform, r.workload))
        s = None
        if b is not None and b.total_client_energy > 0:
            s = savings_percent(r, b)
        out.append(replace(r, savings_vs_baseline=s))
    return out


def rows_from_results(results: Iterable[ScenarioResult]) -> list[ReportRow]:
    rows = []
    for res in results:
        row = make_row(res.scenario.id, res.scenario.client, res.scenario.server, res.platform, res.workload,
                       res.phases, res.ram_power_share)
        rows.append(replace(row, total_time=res.total_time, total_client_energy=res.total_client_energy,
                            ram_energy=res.energy_breakdown()["ram"]))
    return with_savings(rows)


# --- CSV ------------------------------------------------------------------

def rows_to_frame(rows: Sequence[ReportRow]) -> pd.DataFrame:
    records = []
    for r in rows:
        rec = [r.scenario_id, r.client, r.server, r.platform, r.workload]
        for t, e in zip(r.phase_times, r.phase_energies):
            rec += [t, e]
        rec += [r.total_time, r.total_client_energy,
                r.savings_vs_baseline if r.savings_vs_baseline is not None else float("nan"),
                r.processing_cpu_util, r.ram_energy, r.source]
        records.append(rec)
    return pd.DataFrame(records, columns=list(COLUMNS))


def write_results_csv(rows: Sequence[ReportRow], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows_to_frame(rows).to_csv(path, index=False, lineterminator="\n")
    logger.info("wrote %d rows to %s", len(rows), path)
    return path


def read_results_csv(path: str | Path) -> list[ReportRow]:
    df = pd.read_csv(path, float_precision="round_trip",
                     dtype={"client": str, "server": str, "platform": str, "workload": str, "source": str})
    missing = [c for c in COLUMNS if c not in df.columns]
    if missing:
        raise ValueError(f"{path}: missing columns {', '.join(missing)}")
    rows = []
    for rec in df.to_dict("records"):
        sv = rec["savings_vs_baseline_pct"]
        rows.append(ReportRow(
            scenario_id=int(rec["scenario_id"]), client=rec["client"], server=rec["server"],
            platform=rec["platform"], workload=rec["workload"],
            phase_times=tuple(float(rec[f"{p}_time_s"]) for p in PHASES),
            phase_energies=tuple(float(rec[f"{p}_energy_j"]) for p in PHASES),
            total_time=float(rec["total_time_s"]), total_client_energy=float(rec["total_client_energy_j"]),
            savings_vs_baseline=None if pd.isna(sv) else float(sv),
            processing_cpu_util=float(rec["processing_cpu_util"]), ram_energy=float(rec["ram_energy_j"]),
            source=rec["source"],
        ))
    return rows
