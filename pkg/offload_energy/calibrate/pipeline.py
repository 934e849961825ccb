# offload_energy/calibrate/pipeline.py
"""
Calibration runs: the published-input calibration behind the default catalog
and calibration from a directory of measurements.

Input directory layout (every file optional):

* ``processing_times.csv``: ``platform,workload,time_s`` processing times on the reference node
* ``power_<node>.csv``: ``power_w,cpu_pct`` paired samples of one node
* ``bandwidth_<client>__<server>.log``: bandwidth log of one link
* ``fractions.yaml``: ``{client: ..., batch: {generation: ..}, iterative: {..}}``
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path

import pandas as pd
import yaml

from ..errors import CalibrationError
from ..models.catalog import Catalog
from ..models.plan import default_catalog, validate_plan
from .anchors import anchor_residuals, fit_anchor_scales
from .bandwidth import apply_bandwidth, BandwidthFit, ingest_bandwidth_log
from .fractions import fit_phase_fractions
from .powerfit import fit_power_params
from .published import (
    PHASE_FRACTION_TARGETS, PROCESSING_TIMES, QUOTED_BANDWIDTHS, REFERENCE_NODE,
)
from .workfit import apply_work_coefficients, fit_work_coefficients, work_fit_residuals

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("parameter", "value", "residual", "source")


@dataclass(frozen=True, slots=True)
class CalibrationRecord:
    parameter: str
    value: float
    residual: float
    source: str


@dataclass
class CalibrationResult:
    catalog: Catalog
    records: list[CalibrationRecord] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([(r.parameter, r.value, r.residual, r.source) for r in self.records],
                            columns=list(REPORT_COLUMNS))


def _calibrate_work(cat: Catalog, times, reference: str, source: str, records: list) -> Catalog:
    coeffs = fit_work_coefficients(times, cat.node(reference), cat.platforms, cat.workloads)
    cat = apply_work_coefficients(cat, coeffs)
    resid = work_fit_residuals(cat, times, reference)
    for p, row in coeffs.items():
        for w, c in row.items():
            records.append(CalibrationRecord(f"work_coeff.{p}.{w}", c, resid[(p, w)], source))
    return cat


def _calibrate_fractions(cat: Catalog, targets, client: str, source: str, records: list) -> Catalog:
    for kind, tg in targets.items():
        fit = fit_phase_fractions(cat, tg, kind=kind, client=client)
        cat = fit.catalog
        total = sum(tg.values())
        for g, v in fit.achieved.items():
            records.append(CalibrationRecord(f"share.{kind}.{g}", v, v - tg[g] / total, source))
        for knob in ("generation_factor", "result_fraction", "ingest_factor"):
            records.append(CalibrationRecord(f"{knob}.{kind}", getattr(fit, knob), 0.0, source))
    return cat


def calibrate_reference_defaults(base: Catalog | None = None) -> CalibrationResult:
    """
    Re-derive the fitted parameters of the default catalog from the
    published inputs: quoted link bandwidths, the processing-time table and
    the edge-node phase-fraction targets. The quoted absolute joules then set
    the power level of the rpi, edge node and edge server.
    """
    cat = base or default_catalog()
    records: list[CalibrationRecord] = []
    for (c, s), bw in QUOTED_BANDWIDTHS.items():
        if c in cat.nodes and s in cat.nodes:
            cat = apply_bandwidth(cat, BandwidthFit(c, s, bw, 0, 0.0))
            records.append(CalibrationRecord(f"bandwidth.{c}->{s}", bw, 0.0, "published"))
    cat = _calibrate_work(cat, PROCESSING_TIMES, REFERENCE_NODE, "published", records)
    cat = _calibrate_fractions(cat, PHASE_FRACTION_TARGETS, REFERENCE_NODE, "published", records)
    cat, scales = fit_anchor_scales(cat)
    for n, k in scales.items():
        node = cat.node(n)
        records.append(CalibrationRecord(f"power_scale.{n}", k, 0.0, "published"))
        records.append(CalibrationRecord(f"p_idle.{n}", node.p_idle, 0.0, "published"))
        records.append(CalibrationRecord(f"p_busy.{n}", node.p_busy, 0.0, "published"))
    anchors = anchor_residuals(cat)
    for name, (e, resid) in anchors.items():
        records.append(CalibrationRecord(f"anchor.{name}", e, resid, "published"))
    cat = replace(cat, metadata={**cat.metadata,
                                 "anchor_residuals": {k: round(r, 4) for k, (_, r) in anchors.items()}})
    return CalibrationResult(validate_plan(cat), records)


def _node_from_power_file(path: Path) -> str:
    return path.stem[len("power_"):]


def _link_from_bandwidth_file(path: Path) -> tuple[str, str]:
    name = path.stem[len("bandwidth_"):]
    if "__" not in name:
        raise CalibrationError(f"{path.name}: expected bandwidth_<client>__<server>.log")
    client, server = name.split("__", 1)
    return client, server


def calibrate_from_dir(inputs: str | Path, base: Catalog | None = None) -> CalibrationResult:
    """Apply every fit whose input file is present in ``inputs``."""
    d = Path(inputs)
    if not d.is_dir():
        raise FileNotFoundError(f"calibration input directory not found: {d}")
    cat = base or default_catalog()
    records: list[CalibrationRecord] = []

    for f in sorted(d.glob("bandwidth_*.log")):
        client, server = _link_from_bandwidth_file(f)
        fit = ingest_bandwidth_log(f, client, server)
        cat = apply_bandwidth(cat, fit)
        records.append(CalibrationRecord(f"bandwidth.{client}->{server}", fit.bandwidth, 0.0, f.name))

    for f in sorted(d.glob("power_*.csv")):
        node_id = _node_from_power_file(f)
        df = pd.read_csv(f)
        fit = fit_power_params(df["power_w"].to_numpy(float), df["cpu_pct"].to_numpy(float) / 100.0)
        cat = cat.with_node(replace(cat.node(node_id), p_idle=fit.p_idle, p_busy=fit.p_busy))
        records.append(CalibrationRecord(f"p_idle.{node_id}", fit.p_idle, fit.residual, f.name))
        records.append(CalibrationRecord(f"p_busy.{node_id}", fit.p_busy, fit.residual, f.name))

    table = d / "processing_times.csv"
    if table.exists():
        df = pd.read_csv(table)
        times: dict[str, dict[str, float]] = {}
        for row in df.itertuples(index=False):
            times.setdefault(str(row.platform), {})[str(row.workload)] = float(row.time_s)
        cat = _calibrate_work(cat, times, REFERENCE_NODE, table.name, records)

    fr = d / "fractions.yaml"
    if fr.exists():
        spec = yaml.safe_load(fr.read_text(encoding="utf-8")) or {}
        client = str(spec.pop("client", REFERENCE_NODE))
        cat = _calibrate_fractions(cat, spec, client, fr.name, records)

    if not records:
        logger.warning("no calibration inputs found in %s", d)
    return CalibrationResult(validate_plan(cat), records)


def write_calibration_report(result: CalibrationResult, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    result.to_frame().to_csv(path, index=False, lineterminator="\n")
    return path
