# offload_energy/report/aggregate.py
"""
Derived metrics over a set of report rows and their text rendering.

Means are unweighted over platforms and workloads. The text report is a pure
function of its input rows: identical rows give byte-identical text.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..calibrate.fractions import PHASE_GROUPS
from ..models.catalog import PLATFORM_NAMES, TIERS
from .rows import ReportRow

logger = logging.getLogger(__name__)

CLOUD_DESTINATIONS = ("private_cloud", "public_cloud")


@dataclass
class Report:
    """Aggregates keyed the way they are printed."""
    destination_savings: dict[str, dict[str, float]] = field(default_factory=dict)
    client_savings: dict[str, float] = field(default_factory=dict)
    grand_savings: float | None = None
    edge_server_excl_grep: dict[str, float] = field(default_factory=dict)
    batch_vs_iterative: dict[str, float] = field(default_factory=dict)
    platform_ranking: dict[int, list[tuple[str, float]]] = field(default_factory=dict)
    cloud_deltas: dict[str, dict[str, float]] = field(default_factory=dict)
    phase_fractions: dict[tuple[str, str, str], dict[str, float]] = field(default_factory=dict)
    device_energy: dict[str, dict[str, float]] = field(default_factory=dict)
    device_time: dict[str, dict[str, float]] = field(default_factory=dict)
    baseline_processing_share: dict[str, float] = field(default_factory=dict)
    edge_node_vs_rpi: float | None = None
    utilization: dict[str, dict[str, float]] = field(default_factory=dict)
    n_rows: int = 0


def _mean(values) -> float:
    return float(np.mean(list(values)))


def _order(names, preferred) -> list[str]:
    known = [n for n in preferred if n in names]
    return known + sorted(n for n in names if n not in preferred)


def _group_energy(row: ReportRow, group: str) -> float:
    return sum(row.phase_energy(p) for p in PHASE_GROUPS[group])


def destination_label(row: ReportRow) -> str:
    return row.server if row.is_offloading else "local"


def aggregate_report(rows: Sequence[ReportRow]) -> Report:
    """
    Compute every aggregate the report prints.

    Sections: per-client savings per destination, batch vs iterative
    processing energy, platform ranking per scenario, private vs public
    deltas, phase fractions per scenario class, device comparison and
    client utilization.
    """
    if not rows:
        raise ValueError("no results to aggregate")
    rep = Report(n_rows=len(rows))
    clients = _order({r.client for r in rows}, TIERS)

    # (a) savings
    saved = [r for r in rows if r.is_offloading and r.savings_vs_baseline is not None]
    for c in clients:
        mine = [r for r in saved if r.client == c]
        if not mine:
            continue
        rep.destination_savings[c] = {
            s: _mean(r.savings_vs_baseline for r in mine if r.server == s)
            for s in _order({r.server for r in mine}, TIERS)
        }
        rep.client_savings[c] = _mean(r.savings_vs_baseline for r in mine)
    if saved:
        rep.grand_savings = _mean(r.savings_vs_baseline for r in saved)
    es = [r for r in saved if r.client == "edge_server" and r.server in CLOUD_DESTINATIONS and r.workload != "grep"]
    for p in _order({r.platform for r in es}, PLATFORM_NAMES):
        rep.edge_server_excl_grep[p] = _mean(r.savings_vs_baseline for r in es if r.platform == p)

    # (b) processing energy of batch vs iterative workloads, per client baseline
    for c in clients:
        base = [r for r in rows if r.client == c and not r.is_offloading]
        batch = sum(r.phase_energy("data_processing") for r in base if r.kind == "batch")
        it = sum(r.phase_energy("data_processing") for r in base if r.kind == "iterative")
        if batch > 0 and it > 0:
            rep.batch_vs_iterative[c] = 100.0 * (1.0 - batch / it)

    # (c) platform ranking per scenario
    for sid in sorted({r.scenario_id for r in rows}):
        mine = [r for r in rows if r.scenario_id == sid]
        means = {p: _mean(r.total_client_energy for r in mine if r.platform == p) for p in {r.platform for r in mine}}
        rep.platform_ranking[sid] = sorted(means.items(), key=lambda kv: (kv[1], kv[0]))

    # (d) private vs public, total and transmission energy
    for c in clients:
        priv = [r for r in rows if r.client == c and r.server == "private_cloud"]
        pub = [r for r in rows if r.client == c and r.server == "public_cloud"]
        if not priv or not pub:
            continue
        ep, eu = sum(r.total_client_energy for r in priv), sum(r.total_client_energy for r in pub)
        xp = sum(r.phase_energy("data_transmission") for r in priv)
        xu = sum(r.phase_energy("data_transmission") for r in pub)
        rep.cloud_deltas[c] = {
            "total_private_lower_pct": 100.0 * (eu - ep) / eu if eu else 0.0,
            "total_public_higher_pct": 100.0 * (eu - ep) / ep if ep else 0.0,
            "transmission_private_lower_pct": 100.0 * (xu - xp) / xu if xu else 0.0,
        }

    # (e) phase shares per (client, concept, kind), ratio of sums
    for c in clients:
        for concept in ("non_offloading", "offloading"):
            for kind in ("batch", "iterative"):
                mine = [r for r in rows if r.client == c and r.is_offloading == (concept == "offloading")
                        and r.kind == kind]
                totals = {g: sum(_group_energy(r, g) for r in mine) for g in PHASE_GROUPS}
                s = sum(totals.values())
                if s > 0:
                    rep.phase_fractions[(c, concept, kind)] = {g: 100.0 * e / s for g, e in totals.items()}

    # (f) device comparison
    for dest in ["local", *_order({r.server for r in rows if r.is_offloading}, TIERS)]:
        mine = [r for r in rows if destination_label(r) == dest]
        cl = _order({r.client for r in mine}, TIERS)
        if len(cl) < 2:
            continue
        rep.device_energy[dest] = {c: _mean(r.total_client_energy for r in mine if r.client == c) for c in cl}
        rep.device_time[dest] = {c: _mean(r.total_time for r in mine if r.client == c) for c in cl}
    for c in clients:
        base = [r for r in rows if r.client == c and not r.is_offloading]
        tot = sum(r.total_client_energy for r in base)
        if tot > 0:
            rep.baseline_processing_share[c] = 100.0 * sum(_group_energy(r, "processing") for r in base) / tot
    to_es = rep.device_energy.get("edge_server", {})
    if "rpi" in to_es and "edge_node" in to_es and to_es["rpi"] > 0:
        rep.edge_node_vs_rpi = 100.0 * (to_es["rpi"] - to_es["edge_node"]) / to_es["rpi"]

    # (g) client CPU while processing runs
    for c in clients:
        base = [r.processing_cpu_util for r in rows if r.client == c and not r.is_offloading]
        off = [r.processing_cpu_util for r in rows if r.client == c and r.is_offloading]
        rep.utilization[c] = {k: 100.0 * _mean(v) for k, v in (("baseline", base), ("offloading", off)) if v}
    return rep


def _ranks(values: dict[str, float]) -> dict[str, int]:
    return {k: i + 1 for i, (k, _) in enumerate(sorted(values.items(), key=lambda kv: (kv[1], kv[0])))}


def format_report(rep: Report, notes: Sequence[str] = ()) -> str:
    """Fixed-format text rendering of :func:`aggregate_report` output."""
    out = [
        "offload-energy report",
        f"cells: {rep.n_rows}",
        "Mean savings are unweighted means over platforms and workloads.",
        "",
        "(a) Mean energy savings of offloading vs the client's non-offloading baseline (%)",
    ]
    for c, by_dest in rep.destination_savings.items():
        for s, v in by_dest.items():
            out.append(f"  {c:<12} -> {s:<14} {v:8.2f}")
        label = "  [per-client mean; the 51.6% RPI claim]" if c == "rpi" else ""
        out.append(f"  {c:<12} mean{'':<13} {rep.client_savings[c]:8.2f}{label}")
    if rep.grand_savings is not None:
        out.append(f"  all offloading cells{'':<9} {rep.grand_savings:8.2f}  [grand mean; the 55.2% overall claim]")
    if rep.edge_server_excl_grep:
        out.append("  edge_server -> clouds, excluding grep:")
        for p, v in rep.edge_server_excl_grep.items():
            out.append(f"    {p:<10} {v:8.2f}")
    out += ["", "(b) Processing energy of batch workloads below iterative, baseline runs (%)"]
    for c, v in rep.batch_vs_iterative.items():
        out.append(f"  {c:<12} {v:8.2f}")
    out += ["", "(c) Platform ranking by mean client energy (J), lowest first"]
    for sid, ranking in rep.platform_ranking.items():
        out.append(f"  S{sid:<3} " + " < ".join(f"{p} ({e:.1f})" for p, e in ranking))
    out += ["", "(d) Private vs public cloud (%)"]
    for c, d in rep.cloud_deltas.items():
        out.append(f"  {c:<12} total: private lower by {d['total_private_lower_pct']:.2f}, "
                   f"public higher by {d['total_public_higher_pct']:.2f}; "
                   f"transmission: private lower by {d['transmission_private_lower_pct']:.2f}")
    out += ["", "(e) Energy share per phase group (%): generation / transmission / copy / processing"]
    for (c, concept, kind), shares in rep.phase_fractions.items():
        out.append(f"  {c:<12} {concept:<15} {kind:<10} " + " / ".join(f"{shares[g]:6.2f}" for g in PHASE_GROUPS))
    out += ["", "(f) Device comparison: mean client energy (J) and time (s), rank 1 = lowest"]
    for dest, energies in rep.device_energy.items():
        er, tr = _ranks(energies), _ranks(rep.device_time[dest])
        for c, e in energies.items():
            out.append(f"  {dest:<14} {c:<12} {e:12.1f} J (rank {er[c]})  {rep.device_time[dest][c]:10.1f} s (rank {tr[c]})")
    for c, v in rep.baseline_processing_share.items():
        out.append(f"  processing share of baseline energy, {c}: {v:.2f}%")
    if rep.edge_node_vs_rpi is not None:
        out.append(f"  edge_node below rpi when offloading to edge_server: {rep.edge_node_vs_rpi:.2f}%")
    out += ["", "(g) Mean client CPU during data processing (%)"]
    for c, u in rep.utilization.items():
        out.append(f"  {c:<12} " + ", ".join(f"{k} {v:.2f}" for k, v in u.items()))
    if notes:
        out += ["", "Notes"]
        out += [f"  {n}" for n in notes]
    return "\n".join(out) + "\n"
