# offload_energy/report/plotdata.py
"""
Tidy plot tables (panel, x, series, value), one per figure id.

No rendering happens here; any plotting tool can pivot the tables.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import pandas as pd

from ..errors import InsufficientCoverageError, UnknownFigureError
from ..models.catalog import PHASES, PLATFORM_NAMES, WORKLOAD_NAMES
from .rows import ReportRow

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ["panel", "x", "series", "value"]
DESTINATIONS = ("local", "edge_node", "edge_server", "private_cloud", "public_cloud")


@dataclass(frozen=True)
class Figure:
    id: str
    title: str
    pairs: tuple[tuple[str, str], ...]          # (client, server) cells the figure needs
    build: Callable[[Sequence[ReportRow]], list[tuple]]


def _dest(r: ReportRow) -> str:
    return r.server if r.is_offloading else "local"


def _client_energy(client: str):
    def build(rows):
        out = []
        for w in WORKLOAD_NAMES:
            for d in DESTINATIONS:
                for p in PLATFORM_NAMES:
                    for r in rows:
                        if (r.client, r.workload, r.platform) == (client, w, p) and _dest(r) == d:
                            out.append((w, d, p, r.total_client_energy))
        return out
    return build


def _mean(rows, fn) -> float:
    return float(np.mean([fn(r) for r in rows]))


def _transmission(rows):
    out = []
    for c in ("rpi", "edge_node", "edge_server"):
        for metric, fn in (("time_s", lambda r: r.phase_time("data_transmission")),
                           ("energy_j", lambda r: r.phase_energy("data_transmission"))):
            for s in ("private_cloud", "public_cloud"):
                for p in PLATFORM_NAMES:
                    mine = [r for r in rows if (r.client, r.server, r.platform) == (c, s, p)]
                    if mine:
                        out.append((f"{c} {metric}", s, p, _mean(mine, fn)))
    return out


def _stage_energy(rows):
    out = []
    for d in DESTINATIONS:
        for kind in ("batch", "iterative"):
            for ph in PHASES:
                for p in PLATFORM_NAMES:
                    mine = [r for r in rows if r.client == "edge_node" and _dest(r) == d
                            and r.kind == kind and r.platform == p]
                    if mine:
                        out.append((f"{d} {kind}", ph, p, _mean(mine, lambda r: r.phase_energy(ph))))
    return out


def _device(metric: str):
    def build(rows):
        out = []
        for d in ("local", "edge_server", "private_cloud", "public_cloud"):
            for c in ("rpi", "edge_node", "edge_server"):
                for p in PLATFORM_NAMES:
                    mine = [r for r in rows if r.client == c and _dest(r) == d and r.platform == p]
                    if mine:
                        fn = (lambda r: r.total_client_energy) if metric == "energy" else (lambda r: r.total_time)
                        out.append((d, c, p, _mean(mine, fn)))
        return out
    return build


def _ram_share(r: ReportRow) -> float:
    return r.ram_energy / r.total_client_energy if r.total_client_energy else 0.0


def _cpu_ram(rows):
    """Processing-phase (waiting) energy split into CPU and RAM parts."""
    out = []
    for d in ("private_cloud", "public_cloud"):
        for c in ("edge_node", "edge_server"):
            mine = [r for r in rows if r.client == c and r.server == d]
            if not mine:
                continue
            ram = _mean(mine, lambda r: r.phase_energy("data_processing") * _ram_share(r))
            total = _mean(mine, lambda r: r.phase_energy("data_processing"))
            out += [(d, c, "cpu", total - ram), (d, c, "ram", ram)]
    return out


def _pairs(client: str, servers) -> tuple[tuple[str, str], ...]:
    return tuple((client, s) for s in servers)


_RPI = _pairs("rpi", ("rpi", "edge_node", "edge_server", "private_cloud", "public_cloud"))
_EN = _pairs("edge_node", ("edge_node", "edge_server", "private_cloud", "public_cloud"))
_ES = _pairs("edge_server", ("edge_server", "private_cloud", "public_cloud"))
_BASELINES = (("rpi", "rpi"), ("edge_node", "edge_node"), ("edge_server", "edge_server"))

FIGURES: dict[str, Figure] = {f.id: f for f in (
    Figure("rpi-energy", "Client energy offloading from the RPI", _RPI, _client_energy("rpi")),
    Figure("edge-node-energy", "Client energy offloading from the edge node", _EN, _client_energy("edge_node")),
    Figure("edge-server-energy", "Client energy offloading from the edge server", _ES,
           _client_energy("edge_server")),
    Figure("transmission", "Transmission time and energy to private and public cloud",
           (("rpi", "private_cloud"), ("rpi", "public_cloud")), _transmission),
    Figure("stage-energy", "Edge-node energy per phase", _EN, _stage_energy),
    Figure("device-energy", "Mean client energy per device", _BASELINES, _device("energy")),
    Figure("device-time", "Mean execution time per device", _BASELINES, _device("time")),
    Figure("cpu-ram-energy", "CPU and RAM energy while waiting on the clouds",
           (("edge_node", "private_cloud"), ("edge_node", "public_cloud"),
            ("edge_server", "private_cloud"), ("edge_server", "public_cloud")), _cpu_ram),
)}


def missing_cells(rows: Sequence[ReportRow], figure: Figure) -> list[str]:
    have = {(r.client, r.server, r.platform, r.workload) for r in rows}
    return [f"{c}->{s} {p}/{w}" for c, s in figure.pairs for p in PLATFORM_NAMES for w in WORKLOAD_NAMES
            if (c, s, p, w) not in have]


def plot_table(rows: Sequence[ReportRow], figure_id: str) -> pd.DataFrame:
    """
    Tidy table for ``figure_id``.

    Raises:
        UnknownFigureError: figure id not in :data:`FIGURES`
        InsufficientCoverageError: a needed cell is absent from ``rows``
    """
    if figure_id not in FIGURES:
        raise UnknownFigureError(figure_id, sorted(FIGURES))
    fig = FIGURES[figure_id]
    missing = missing_cells(rows, fig)
    if missing:
        raise InsufficientCoverageError(figure_id, missing)
    return pd.DataFrame(fig.build(rows), columns=PLOT_COLUMNS)


def write_plot_csv(rows: Sequence[ReportRow], figure_id: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    plot_table(rows, figure_id).to_csv(path, index=False, lineterminator="\n")
    logger.info("wrote figure %s to %s", figure_id, path)
    return path


def write_covered_plots(rows: Sequence[ReportRow], directory: str | Path) -> list[Path]:
    """Every figure the rows fully cover, as ``plot_<id>.csv`` in ``directory``."""
    written = []
    for fid, fig in FIGURES.items():
        if missing_cells(rows, fig):
            logger.info("skipping figure %s: incomplete coverage", fid)
            continue
        written.append(write_plot_csv(rows, fid, Path(directory) / f"plot_{fid}.csv"))
    return written
