# offload_energy/models/plan.py
"""Experiment plan I/O (YAML), validation and the built-in default catalog."""

from __future__ import annotations

import logging
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from ..errors import PlanValidationError
from .catalog import (
    CLOUD_TIERS, PLATFORM_NAMES, TIERS, WORKLOAD_KINDS, WORKLOAD_NAMES,
    Catalog, NodeSpec, PlatformProfile, WorkloadSpec,
)

logger = logging.getLogger(__name__)

DEFAULT_CATALOG_RESOURCE = "default_catalog.yaml"


def _check_fraction(errors: list[str], where: str, name: str, v: float, upper_open: bool = False):
    if not (0.0 <= v < 1.0 if upper_open else 0.0 <= v <= 1.0):
        errors.append(f"{where}: {name}={v} outside [0,1{')' if upper_open else ']'}")


def _node_errors(n: NodeSpec) -> list[str]:
    e: list[str] = []
    w = f"node '{n.id}'"
    if n.tier not in TIERS:
        e.append(f"{w}: unknown tier '{n.tier}'")
    if n.cores < 1:
        e.append(f"{w}: cores must be >= 1")
    for name in ("ram", "disk", "disk_read_rate", "disk_write_rate", "core_speed"):
        if not getattr(n, name) > 0:
            e.append(f"{w}: non-positive {name}")
    if not (0 < n.p_idle <= n.p_busy):
        e.append(f"{w}: requires 0 < p_idle <= p_busy")
    if n.tier in CLOUD_TIERS and n.metered:
        e.append(f"{w}: cloud tiers cannot be metered")
    if n.tier not in CLOUD_TIERS and n.cluster_size != 1:
        e.append(f"{w}: cluster_size must be 1 for non-cloud tiers")
    if n.cluster_size < 1:
        e.append(f"{w}: cluster_size must be >= 1")
    _check_fraction(e, w, "ram_power_share", n.ram_power_share)
    return e


def _platform_errors(p: PlatformProfile, workloads: Mapping[str, WorkloadSpec]) -> list[str]:
    e: list[str] = []
    w = f"platform '{p.name}'"
    if p.name not in PLATFORM_NAMES:
        e.append(f"{w}: unknown platform name")
    expected = "disk_based" if p.name == "hadoop" else "memory_based"
    if p.storage_mode != expected:
        e.append(f"{w}: storage_mode must be {expected}")
    for wl in workloads:
        if wl not in p.work_coeff:
            e.append(f"{w}: missing work_coeff for '{wl}'")
    for wl, c in p.work_coeff.items():
        if not c > 0:
            e.append(f"{w}: non-positive work_coeff for '{wl}'")
    for kind in ("batch", "iterative"):
        if kind not in p.cpu_util_processing:
            e.append(f"{w}: missing cpu_util_processing for '{kind}'")
    for kind, u in p.cpu_util_processing.items():
        _check_fraction(e, w, f"cpu_util_processing[{kind}]", u)
    _check_fraction(e, w, "init_energy_fraction", p.init_energy_fraction, upper_open=True)
    for name in ("cpu_util_idle_wait", "cpu_util_transmission", "cpu_util_generation",
                 "cpu_util_copy", "spill_fraction", "mem_fraction_processing"):
        _check_fraction(e, w, name, getattr(p, name))
    for name in ("disk_write_rate_active", "disk_read_rate_active", "ingest_rate"):
        if not getattr(p, name) > 0:
            e.append(f"{w}: non-positive {name}")
    for tier, (r, wr) in p.disk_rates_by_tier.items():
        if tier not in TIERS:
            e.append(f"{w}: disk_rates_by_tier has unknown tier '{tier}'")
        if r < 0 or wr < 0:
            e.append(f"{w}: negative disk rate for tier '{tier}'")
    for tier, u in p.idle_wait_by_tier.items():
        if tier not in TIERS:
            e.append(f"{w}: idle_wait_by_tier has unknown tier '{tier}'")
        _check_fraction(e, w, f"idle_wait_by_tier[{tier}]", u)
    return e


def _workload_errors(wl: WorkloadSpec) -> list[str]:
    e: list[str] = []
    w = f"workload '{wl.name}'"
    if wl.name not in WORKLOAD_NAMES:
        e.append(f"{w}: unknown workload name")
    elif wl.kind != WORKLOAD_KINDS[wl.name]:
        e.append(f"{w}: must be {WORKLOAD_KINDS[wl.name]}")
    if wl.kind == "batch" and wl.iterations != 1:
        e.append(f"{w}: batch workloads run exactly 1 iteration")
    if wl.kind == "iterative" and wl.iterations < 2:
        e.append(f"{w}: iterative workloads need iterations >= 2")
    for name in ("data_size", "generation_factor", "ingest_factor"):
        if not getattr(wl, name) > 0:
            e.append(f"{w}: non-positive {name}")
    if wl.result_fraction < 0:
        e.append(f"{w}: negative result_fraction")
    return e


def validate_plan(plan: Catalog | Mapping[str, Any]) -> Catalog:
    """
    Validate an experiment plan and return it normalized with defaults filled.

    Args:
        plan: A :class:`Catalog` or the raw mapping loaded from a plan file

    Returns:
        The validated catalog

    Raises:
        PlanValidationError: listing every problem found
    """
    errors: list[str] = []
    if isinstance(plan, Catalog):
        cat = plan
    else:
        try:
            cat = Catalog.from_dict(plan)
        except (KeyError, TypeError, ValueError) as exc:
            raise PlanValidationError([f"malformed plan: {exc!r}"]) from exc

    for n in cat.nodes.values():
        errors += _node_errors(n)
    for p in cat.platforms.values():
        errors += _platform_errors(p, cat.workloads)
    for wl in cat.workloads.values():
        errors += _workload_errors(wl)

    for (c, s), l in cat.links.items():
        w = f"link {c}->{s}"
        for nid in (c, s):
            if nid not in cat.nodes:
                errors.append(f"{w}: unknown id '{nid}'")
        if not l.bandwidth > 0:
            errors.append(f"{w}: bandwidth must be > 0")
        if l.distance < 0:
            errors.append(f"{w}: negative distance")
        if l.handshake_latency < 0:
            errors.append(f"{w}: negative handshake_latency")

    c = cat.constants
    for name in ("chunk_size", "signal_speed", "sample_period"):
        if not getattr(c, name) > 0:
            errors.append(f"constants: non-positive {name}")
    if not 0 <= c.trace_jitter < 1:
        errors.append("constants: trace_jitter outside [0,1)")
    _check_fraction(errors, "constants", "mem_fraction_idle", c.mem_fraction_idle)

    seen: set[int] = set()
    for s in cat.scenarios:
        w = f"scenario {s.id}"
        if s.id in seen:
            errors.append(f"{w}: duplicate id")
        seen.add(s.id)
        unknown = [nid for nid in (s.client, s.server) if nid not in cat.nodes]
        for nid in unknown:
            errors.append(f"{w}: unknown id '{nid}'")
        if unknown:
            continue
        if cat.nodes[s.client].is_cloud:
            errors.append(f"{w}: cloud tier cannot be a client")
        expected = "non_offloading" if s.client == s.server else "offloading"
        if s.concept != expected:
            errors.append(f"{w}: concept must be {expected}")
        if s.client != s.server and (s.client, s.server) not in cat.links:
            errors.append(f"{w}: missing link {s.client}->{s.server}")

    if errors:
        raise PlanValidationError(errors)
    return cat


def load_plan(path: str | Path) -> Catalog:
    """Read and validate a YAML plan file."""
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    if not isinstance(raw, Mapping):
        raise PlanValidationError([f"{path}: top level must be a mapping"])
    cat = validate_plan(raw)
    estimated = [f"{c}->{s}" for (c, s), l in cat.links.items() if l.estimated]
    if estimated:
        logger.info("plan %s uses estimated links: %s", path, ", ".join(estimated))
    return cat


def dump_plan(catalog: Catalog) -> str:
    return yaml.safe_dump(catalog.to_dict(), sort_keys=False, default_flow_style=False)


def save_plan(catalog: Catalog, path: str | Path) -> Path:
    """Write ``catalog`` as a YAML plan; reloading it yields an equal catalog."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_plan(catalog), encoding="utf-8", newline="\n")
    logger.info("wrote plan %s", path)
    return path


@lru_cache(maxsize=1)
def _default_raw() -> str:
    return resources.files("offload_energy.models.data").joinpath(DEFAULT_CATALOG_RESOURCE).read_text(encoding="utf-8")


def default_catalog() -> Catalog:
    """The five measured nodes, the bandwidth matrix, three platforms, four workloads and twelve scenarios."""
    return validate_plan(yaml.safe_load(_default_raw()))
