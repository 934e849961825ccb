"""Domain model: nodes, links, platforms, workloads, scenarios and plans."""

from .catalog import (
    CLOUD_TIERS, LOCAL_PHASES, PHASES, PLATFORM_NAMES, TIERS, WORKLOAD_KINDS, WORKLOAD_NAMES,
    Catalog, Constants, LinkSpec, NodeSpec, PlatformProfile, Scenario, WorkloadSpec, phase_plan,
)
from .plan import default_catalog, dump_plan, load_plan, save_plan, validate_plan

__all__ = [
    "TIERS", "CLOUD_TIERS", "PLATFORM_NAMES", "WORKLOAD_NAMES", "WORKLOAD_KINDS", "PHASES", "LOCAL_PHASES",
    "Constants", "NodeSpec", "LinkSpec", "PlatformProfile", "WorkloadSpec", "Scenario", "Catalog",
    "phase_plan", "validate_plan", "load_plan", "dump_plan", "save_plan", "default_catalog",
]
