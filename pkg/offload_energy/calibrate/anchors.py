# offload_energy/calibrate/anchors.py
"""
Absolute energy anchors.

Phase shares and savings are ratios, so they fix the shape of a node's power
curve but not its level. The quoted absolute joules fix the level: every
anchored energy is linear in a node's power scale ``k`` (both ``p_idle`` and
``p_busy`` multiplied by ``k``), so one least-squares solve over relative
errors gives all scales at once.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from ..energy.phases import dfs_copy_time_energy, transmission_energy
from ..errors import CalibrationError
from ..models.catalog import Catalog
from .published import ENERGY_ANCHORS

logger = logging.getLogger(__name__)

COPY_BAND = ("edge_server copy (low)", "edge_server copy (high)")


@dataclass(frozen=True, slots=True)
class AnchorRow:
    node: str
    name: str
    modelled: float         # J at the catalog's current power scale
    target: float           # J


def _tx_platform(cat: Catalog):
    return cat.platform("hadoop") if "hadoop" in cat.platforms else next(iter(cat.platforms.values()))


def edge_server_copy_energy(cat: Catalog) -> float:
    """Mean edge-server client energy of the DFS copy into either cloud, over platforms and workloads."""
    es = cat.node("edge_server")
    copies = [dfs_copy_time_energy(cat.node(dst), w.data_size, pl, es, w.ingest_factor, cat.constants).client_energy
              for dst in ("private_cloud", "public_cloud") if dst in cat.nodes
              for pl in cat.platforms.values() for w in cat.workloads.values()]
    if not copies:
        raise CalibrationError("no cloud node to copy into")
    return sum(copies) / len(copies)


def anchor_rows(cat: Catalog) -> list[AnchorRow]:
    """One row per quoted energy the catalog can express; the copy band gives two rows."""
    size = next(iter(cat.workloads.values())).data_size
    p = _tx_platform(cat)
    rows = []
    for name, (c, s) in {"edge_node->edge_server transmission": ("edge_node", "edge_server"),
                         "rpi->edge_server transmission": ("rpi", "edge_server")}.items():
        if c in cat.nodes and (c, s) in cat.links:
            e = transmission_energy(cat.node(c), cat.link(c, s), size, p, cat.constants)
            rows.append(AnchorRow(c, name, e, ENERGY_ANCHORS[name]))
    if "edge_server" in cat.nodes and any(d in cat.nodes for d in ("private_cloud", "public_cloud")):
        e = edge_server_copy_energy(cat)
        rows += [AnchorRow("edge_server", name, e, ENERGY_ANCHORS[name]) for name in COPY_BAND]
    return rows


def anchor_residuals(cat: Catalog) -> dict[str, tuple[float, float]]:
    """(modelled J, relative residual) for each quoted absolute energy; inside the copy band counts as 0."""
    out: dict[str, tuple[float, float]] = {}
    for r in anchor_rows(cat):
        if r.name in COPY_BAND:
            lo, hi = (ENERGY_ANCHORS[n] for n in COPY_BAND)
            e = r.modelled
            out["edge_server copy"] = (e, 0.0 if lo <= e <= hi else (e / lo - 1.0 if e < lo else e / hi - 1.0))
        else:
            out[r.name] = (r.modelled, r.modelled / r.target - 1.0)
    return out


def fit_anchor_scales(cat: Catalog) -> tuple[Catalog, dict[str, float]]:
    """
    Rescale the power curve of every anchored node so its modelled energies
    match the quoted ones in relative least squares.

    Returns:
        (catalog with p_idle / p_busy rescaled, node -> applied scale)

    Raises:
        CalibrationError: no anchor applies, or a node models zero energy
    """
    rows = anchor_rows(cat)
    if not rows:
        raise CalibrationError("no energy anchor applies to this catalog")
    nodes = sorted({r.node for r in rows})
    # block design: one column per node, rows E_i / target_i against 1
    A = np.zeros((len(rows), len(nodes)))
    for i, r in enumerate(rows):
        A[i, nodes.index(r.node)] = r.modelled / r.target
    if np.any(~A.any(axis=0)):
        dead = [n for n, used in zip(nodes, A.any(axis=0)) if not used]
        raise CalibrationError(f"anchored node(s) model zero energy: {', '.join(dead)}")
    k, *_ = np.linalg.lstsq(A, np.ones(len(rows)), rcond=None)

    scales = {n: float(v) for n, v in zip(nodes, k)}
    for n, v in scales.items():
        node = cat.node(n)
        cat = cat.with_node(replace(node, p_idle=node.p_idle * v, p_busy=node.p_busy * v))
        logger.debug("anchor scale %s: %.6g", n, v)
    return cat, scales
