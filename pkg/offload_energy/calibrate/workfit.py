# offload_energy/calibrate/workfit.py
"""Exact work-coefficient fit from a table of processing times."""

from __future__ import annotations

import logging
from dataclasses import replace
from typing import Mapping

from ..energy.phases import disk_penalty, processing_time
from ..errors import CalibrationError
from ..models.catalog import Catalog, NodeSpec, PlatformProfile, WorkloadSpec

logger = logging.getLogger(__name__)


def fit_work_coefficients(times: Mapping[str, Mapping[str, float]], reference_node: NodeSpec,
                          platforms: Mapping[str, PlatformProfile],
                          workloads: Mapping[str, WorkloadSpec]) -> dict[str, dict[str, float]]:
    """
    One coefficient per (platform, workload) so that processing_time on
    ``reference_node`` reproduces ``times`` exactly.

    Args:
        times: platform -> workload -> seconds on the reference node
        reference_node: Node the times were measured on
        platforms: Platform profiles (spill fraction and disk rate are kept)
        workloads: Workload specs (iterations and data size are kept)

    Returns:
        platform -> workload -> work coefficient (reference-core seconds per iteration)
    """
    if reference_node.capacity <= 0:
        raise CalibrationError(f"reference node '{reference_node.id}' has no capacity")
    missing = [f"{p}/{w}" for p in platforms for w in workloads if w not in times.get(p, {})]
    if missing:
        raise CalibrationError(f"missing processing time for {', '.join(missing)}")

    out: dict[str, dict[str, float]] = {}
    for p_name, platform in platforms.items():
        out[p_name] = {}
        for w_name, workload in workloads.items():
            t = float(times[p_name][w_name])
            if t <= 0:
                raise CalibrationError(f"non-positive processing time {t} for {p_name}/{w_name}")
            compute = t - disk_penalty(platform, workload, reference_node)
            if compute <= 0:
                raise CalibrationError(
                    f"{p_name}/{w_name}: disk penalty alone exceeds the measured {t} s")
            out[p_name][w_name] = compute * reference_node.capacity / workload.iterations
    logger.info("fitted %d work coefficients on %s", sum(len(v) for v in out.values()), reference_node.id)
    return out


def apply_work_coefficients(catalog: Catalog, coeffs: Mapping[str, Mapping[str, float]]) -> Catalog:
    for p_name, wc in coeffs.items():
        platform = catalog.platform(p_name)
        catalog = catalog.with_platform(replace(platform, work_coeff={**platform.work_coeff, **wc}))
    return catalog


def work_fit_residuals(catalog: Catalog, times: Mapping[str, Mapping[str, float]],
                       reference_node: str) -> dict[tuple[str, str], float]:
    """Predicted minus measured seconds for every cell of ``times``."""
    node = catalog.node(reference_node)
    return {
        (p, w): processing_time(catalog.platform(p), catalog.workload(w), node) - float(t)
        for p, row in times.items() for w, t in row.items()
    }
