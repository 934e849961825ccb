# offload_energy/calibrate/fractions.py
"""
Phase-fraction calibration.

The shares are ratios of sums: client energy of one phase group summed over
every offloading cell of the calibrated client and workload kind (all
destinations, all platforms), divided by the total over the same cells.
Platform init is counted with processing and result return with
transmission.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

import numpy as np
from scipy.optimize import brentq

from ..errors import InfeasibleTargetsError
from ..models.catalog import Catalog
from ..simulate.engine import ScenarioResult, estimate_phases

logger = logging.getLogger(__name__)

PHASE_GROUPS: dict[str, tuple[str, ...]] = {
    "generation": ("data_generation",),
    "transmission": ("data_transmission", "result_return"),
    "copy": ("copy_to_dfs",),
    "processing": ("init_platform", "data_processing"),
}
SUM_TOLERANCE = 0.02


@dataclass(frozen=True)
class FractionFit:
    catalog: Catalog
    kind: str
    generation_factor: float
    result_fraction: float
    ingest_factor: float
    achieved: dict[str, float]


def group_energies(phases: Iterable) -> dict[str, float]:
    """Client energy per phase group for one cell's phase estimates."""
    out = dict.fromkeys(PHASE_GROUPS, 0.0)
    for p in phases:
        for group, names in PHASE_GROUPS.items():
            if p.phase in names:
                out[group] += p.client_energy
    return out


def phase_shares(results: Iterable[ScenarioResult]) -> dict[str, float]:
    """Ratio-of-sums energy share of every phase group over ``results``."""
    totals = dict.fromkeys(PHASE_GROUPS, 0.0)
    for r in results:
        for g, e in group_energies(r.phases).items():
            totals[g] += e
    s = sum(totals.values())
    return {g: (e / s if s > 0 else 0.0) for g, e in totals.items()}


def _cells(catalog: Catalog, client: str, kind: str):
    scen = [s for s in catalog.scenarios if s.client == client and s.is_offloading]
    wls = [w for w in catalog.workloads.values() if w.kind == kind]
    if not scen or not wls:
        raise InfeasibleTargetsError(f"no offloading cells for client '{client}' and kind '{kind}'")
    return scen, wls


def _sums(catalog: Catalog, client: str, kind: str) -> dict[str, float]:
    scen, wls = _cells(catalog, client, kind)
    totals = dict.fromkeys(PHASE_GROUPS, 0.0)
    for s in scen:
        for p in catalog.platforms.values():
            for w in catalog.workloads.values():
                if w.kind != kind:
                    continue
                for g, e in group_energies(estimate_phases(s, p, w, catalog)).items():
                    totals[g] += e
    return totals


def _with_knob(catalog: Catalog, kind: str, **knob) -> Catalog:
    for w in list(catalog.workloads.values()):
        if w.kind == kind:
            catalog = catalog.with_workload(replace(w, **knob))
    return catalog


def _expand_bracket(f, lo: float, hi: float, grow: float = 4.0, limit: float = 1e6) -> float:
    while f(hi) < 0 and hi < limit:
        lo, hi = hi, hi * grow
    return hi


def fit_phase_fractions(catalog: Catalog, targets: Mapping[str, float], kind: str = "batch",
                        client: str = "edge_node") -> FractionFit:
    """
    Tune generation, result size and ingest so the offloading runs of
    ``client`` hit ``targets`` (shares per phase group).

    Processing energy does not depend on the three knobs, so it fixes the
    total; each knob is then a one-dimensional solve against its own group.

    Raises:
        InfeasibleTargetsError: shares do not sum to 1 +- 0.02, or a group
            cannot reach its share; ``achievable`` names the reachable range
    """
    missing = [g for g in PHASE_GROUPS if g not in targets]
    if missing:
        raise InfeasibleTargetsError(f"missing targets for {', '.join(missing)}")
    if any(float(targets[g]) <= 0 for g in PHASE_GROUPS):
        raise InfeasibleTargetsError("every target share must be positive")
    total = sum(float(targets[g]) for g in PHASE_GROUPS)
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InfeasibleTargetsError(f"target shares sum to {total:.4g}",
                                     {"sum": (1.0 - SUM_TOLERANCE, 1.0 + SUM_TOLERANCE)})
    share = {g: float(targets[g]) / total for g in PHASE_GROUPS}

    cat = _with_knob(catalog, kind, generation_factor=1.0, result_fraction=0.0, ingest_factor=1.0)
    base = _sums(cat, client, kind)
    e_total = base["processing"] / share["processing"]

    # generation energy scales with 1 / generation_factor
    gf = base["generation"] / (share["generation"] * e_total)
    cat = _with_knob(cat, kind, generation_factor=gf)

    if base["transmission"] > share["transmission"] * e_total:
        raise InfeasibleTargetsError(
            f"{kind}: transmission share {share['transmission']:.4g} below what the data upload alone costs",
            {"transmission": (base["transmission"] / e_total, 1.0)})

    def tx_gap(rf: float) -> float:
        return _sums(_with_knob(cat, kind, result_fraction=rf), client, kind)["transmission"] \
            - share["transmission"] * e_total

    rf = 0.0
    if tx_gap(0.0) < 0:
        hi = _expand_bracket(tx_gap, 0.0, 1.0)
        rf = brentq(tx_gap, 0.0, hi, xtol=1e-12)
    cat = _with_knob(cat, kind, result_fraction=rf)

    def copy_gap(log_if: float) -> float:
        return _sums(_with_knob(cat, kind, ingest_factor=float(np.exp(log_if))), client, kind)["copy"] \
            - share["copy"] * e_total

    lo, hi = np.log(1e-4), np.log(1e4)
    if copy_gap(hi) > 0:
        floor = _sums(_with_knob(cat, kind, ingest_factor=float(np.exp(hi))), client, kind)["copy"]
        raise InfeasibleTargetsError(f"{kind}: copy share {share['copy']:.4g} below the server disk limit",
                                     {"copy": (floor / e_total, 1.0)})
    if copy_gap(lo) < 0:
        ceiling = _sums(_with_knob(cat, kind, ingest_factor=float(np.exp(lo))), client, kind)["copy"]
        raise InfeasibleTargetsError(f"{kind}: copy share {share['copy']:.4g} out of reach",
                                     {"copy": (0.0, ceiling / e_total)})
    inf_ = float(np.exp(brentq(copy_gap, lo, hi, xtol=1e-12)))
    cat = _with_knob(cat, kind, ingest_factor=inf_)

    sums = _sums(cat, client, kind)
    s = sum(sums.values())
    achieved = {g: e / s for g, e in sums.items()}
    logger.info("%s fractions on %s: %s", kind, client,
                ", ".join(f"{g}={100 * v:.1f}%" for g, v in achieved.items()))
    return FractionFit(cat, kind, gf, rf, inf_, achieved)
