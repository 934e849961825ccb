# offload_energy/simulate/engine.py
"""
Scenario pipeline and matrix runner.

A scenario runs its phases strictly in sequence on the client's clock:
init_platform, data_generation, data_transmission, copy_to_dfs,
data_processing, result_return (transmission and result return only when
offloading).
"""

from __future__ import annotations

import logging
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ..energy.phases import (
    PhaseEstimate, dfs_copy_time_energy, generation_time_energy, init_platform_estimate,
    processing_estimate, transmission_estimate,
)
from ..errors import OffloadEnergyError
from ..models.catalog import Catalog, PlatformProfile, Scenario, WorkloadSpec, phase_plan
from ..models.plan import validate_plan
from .traces import MeasurementSeries, PowerProfile, power_profile, synthesize_traces

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ScenarioResult:
    """Per-phase outcome of one (scenario, platform, workload) cell."""
    scenario: Scenario
    platform: str
    workload: str
    phases: tuple[PhaseEstimate, ...]
    total_time: float
    total_client_energy: float
    traces: dict[str, MeasurementSeries] = field(repr=False)
    seed: int
    profile: PowerProfile = field(repr=False)
    ram_power_share: float = 0.0
    kind: str = ""
    client_tier: str = ""

    @property
    def key(self) -> tuple[int, str, str]:
        return self.scenario.id, self.platform, self.workload

    def phase(self, name: str) -> PhaseEstimate | None:
        for p in self.phases:
            if p.phase == name:
                return p
        return None

    def energy_breakdown(self) -> dict[str, float]:
        """Client energy split into CPU and RAM parts; the parts sum to the total."""
        ram = self.total_client_energy * self.ram_power_share
        return {"cpu": self.total_client_energy - ram, "ram": ram}

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScenarioResult):
            return NotImplemented
        return (self.key == other.key and self.seed == other.seed and self.phases == other.phases
                and self.total_time == other.total_time
                and self.total_client_energy == other.total_client_energy
                and self.traces.keys() == other.traces.keys()
                and all(self.traces[m] == other.traces[m] for m in self.traces))


@dataclass(frozen=True, slots=True)
class CellFailure:
    scenario_id: int
    platform: str
    workload: str
    message: str


@dataclass
class MatrixResult:
    """Results in (scenario, platform, workload) order plus the cells that failed."""
    results: list[ScenarioResult]
    failures: list[CellFailure] = field(default_factory=list)

    def __iter__(self) -> Iterator[ScenarioResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __getitem__(self, i):
        return self.results[i]

    @property
    def ok(self) -> bool:
        return not self.failures


def estimate_phases(scenario: Scenario, platform: PlatformProfile, workload: WorkloadSpec,
                    catalog: Catalog) -> tuple[PhaseEstimate, ...]:
    """Closed-form phase estimates in pipeline order."""
    client = catalog.node(scenario.client)
    server = catalog.node(scenario.server)
    c = catalog.constants
    link = catalog.link(scenario.client, scenario.server)
    builders = {
        "init_platform": lambda: init_platform_estimate(client, server, platform, workload, c),
        "data_generation": lambda: generation_time_energy(client, workload, platform, c),
        "data_transmission": lambda: transmission_estimate(client, link, workload.data_size, platform,
                                                           "data_transmission", c),
        "copy_to_dfs": lambda: dfs_copy_time_energy(server, workload.data_size, platform, client,
                                                    workload.ingest_factor, c),
        "data_processing": lambda: processing_estimate(client, server, platform, workload, c),
        "result_return": lambda: transmission_estimate(client, link, workload.result_size, platform,
                                                       "result_return", c),
    }
    phases = tuple(builders[name]() for name in phase_plan(scenario))
    for p in phases:
        logger.debug("%s %s/%s %s: %.3f s %.3f J", scenario.label, platform.name, workload.name,
                     p.phase, p.duration, p.client_energy)
    return phases


def cell_seed(seed: int, scenario_id: int, platform: str, workload: str) -> np.random.SeedSequence:
    """Per-cell generator seed; independent of which other cells run."""
    return np.random.SeedSequence([int(seed), int(scenario_id),
                                   zlib.crc32(platform.encode()), zlib.crc32(workload.encode())])


def run_scenario(scenario: Scenario | int, platform: PlatformProfile | str, workload: WorkloadSpec | str,
                 catalog: Catalog, seed: int = 0, traces: bool = True) -> ScenarioResult:
    """
    Execute one scenario as a phase pipeline.

    Args:
        scenario: Scenario or its id in ``catalog``
        platform: Platform profile or name
        workload: Workload spec or name
        catalog: Validated catalog
        seed: Seed for trace jitter; results are deterministic per seed
        traces: Synthesize sampled traces (skipped for bulk runs that only need totals)
    """
    if isinstance(scenario, int):
        scenario = catalog.scenario(scenario)
    if isinstance(platform, str):
        platform = catalog.platform(platform)
    if isinstance(workload, str):
        workload = catalog.workload(workload)

    phases = estimate_phases(scenario, platform, workload, catalog)
    client = catalog.node(scenario.client)
    total_time = sum(p.duration for p in phases)
    total_energy = sum(p.client_energy for p in phases)
    series = {}
    if traces:
        series = synthesize_traces(phases, client, cell_seed(seed, scenario.id, platform.name, workload.name),
                                   catalog.constants)
    return ScenarioResult(
        scenario=scenario,
        platform=platform.name,
        workload=workload.name,
        phases=phases,
        total_time=total_time,
        total_client_energy=total_energy,
        traces=series,
        seed=int(seed),
        profile=power_profile(phases),
        ram_power_share=client.ram_power_share,
        kind=workload.kind,
        client_tier=client.tier,
    )


def run_matrix(plan: Catalog, catalog: Catalog | None = None, seed: int = 0, traces: bool = True,
               workers: int | None = None) -> MatrixResult:
    """
    Run scenarios x platforms x workloads of ``plan``.

    A failing cell is recorded in ``failures`` and never aborts the matrix.
    Cells may run on a thread pool; results keep (scenario, platform,
    workload) order regardless of completion order.
    """
    plan = validate_plan(plan)
    catalog = catalog or plan
    cells = [(s, p, w) for s in sorted(plan.scenarios, key=lambda s: s.id)
             for p in plan.platforms for w in plan.workloads]
    logger.info("running %d cells (seed=%d)", len(cells), seed)

    def _one(cell):
        s, p, w = cell
        try:
            return run_scenario(s, catalog.platform(p), catalog.workload(w), catalog, seed, traces)
        except (OffloadEnergyError, ValueError, KeyError) as exc:
            logger.warning("cell S%d %s/%s failed: %s", s.id, p, w, exc)
            return CellFailure(s.id, p, w, str(exc))

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_one, cells))
    else:
        outcomes = [_one(c) for c in cells]

    out = MatrixResult([o for o in outcomes if isinstance(o, ScenarioResult)],
                       [o for o in outcomes if isinstance(o, CellFailure)])
    logger.info("matrix done: %d ok, %d failed", len(out.results), len(out.failures))
    return out


def find(results: Sequence[ScenarioResult], scenario_id: int, platform: str, workload: str) -> ScenarioResult:
    for r in results:
        if r.key == (scenario_id, platform, workload):
            return r
    raise KeyError(f"no result for S{scenario_id} {platform}/{workload}")
