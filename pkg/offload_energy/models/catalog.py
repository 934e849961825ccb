# offload_energy/models/catalog.py
"""
Declarative domain model: nodes, links, platforms, workloads and scenarios.

All types are frozen dataclasses. A :class:`Catalog` bundles them and doubles
as the experiment plan: the scenarios, platforms and workloads it holds are
exactly the matrix that gets executed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace, asdict
from typing import Any, Iterable, Literal, Mapping

Tier = Literal["rpi", "edge_node", "edge_server", "private_cloud", "public_cloud"]
StorageMode = Literal["disk_based", "memory_based"]
WorkloadKind = Literal["batch", "iterative"]
Concept = Literal["offloading", "non_offloading"]
Phase = Literal[
    "init_platform",
    "data_generation",
    "data_transmission",
    "copy_to_dfs",
    "data_processing",
    "result_return",
]

TIERS: tuple[str, ...] = ("rpi", "edge_node", "edge_server", "private_cloud", "public_cloud")
CLOUD_TIERS: tuple[str, ...] = ("private_cloud", "public_cloud")
PLATFORM_NAMES: tuple[str, ...] = ("hadoop", "spark", "flink")
WORKLOAD_NAMES: tuple[str, ...] = ("grep", "wordcount", "kmeans", "pagerank")
WORKLOAD_KINDS: dict[str, str] = {
    "grep": "batch",
    "wordcount": "batch",
    "kmeans": "iterative",
    "pagerank": "iterative",
}
PHASES: tuple[str, ...] = (
    "init_platform",
    "data_generation",
    "data_transmission",
    "copy_to_dfs",
    "data_processing",
    "result_return",
)
LOCAL_PHASES: tuple[str, ...] = ("init_platform", "data_generation", "copy_to_dfs", "data_processing")


@dataclass(frozen=True, slots=True)
class Constants:
    """Model constants shared by every scenario of a catalog."""
    chunk_size: float = 64.0            # MB per transfer chunk
    signal_speed: float = 2.0e8         # m/s
    trace_jitter: float = 0.10          # relative, uniform +-
    sample_period: float = 1.0          # s between simulated samples
    mem_fraction_idle: float = 0.12     # share of RAM in use outside processing

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Constants":
        return cls(**{k: float(v) for k, v in d.items()})


@dataclass(frozen=True, slots=True)
class NodeSpec:
    """
    A compute device.

    Attributes:
        id: Node id referenced by links and scenarios
        tier: Device class
        cores: CPU cores per machine
        ram: RAM per machine (GB)
        disk: Disk per machine (GB)
        disk_read_rate: Sequential disk read (MB/s)
        disk_write_rate: Sequential disk write (MB/s)
        p_idle: Power at 0% CPU (W)
        p_busy: Power at 100% CPU (W)
        metered: Whether client energy is accounted for (defaults to False for cloud tiers)
        cluster_size: Machines behind the node (VM count for clouds)
        core_speed: Per-core speed relative to the reference core
        ram_power_share: Share of client energy attributed to RAM
    """
    id: str
    tier: str
    cores: int
    ram: float
    disk: float
    disk_read_rate: float
    disk_write_rate: float
    p_idle: float
    p_busy: float
    metered: bool = True
    cluster_size: int = 1
    core_speed: float = 1.0
    ram_power_share: float = 0.0

    @property
    def is_cloud(self) -> bool:
        return self.tier in CLOUD_TIERS

    @property
    def capacity(self) -> float:
        """Processing capacity in reference-core units."""
        return self.cluster_size * self.cores * self.core_speed

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("id")
        return d

    @classmethod
    def from_dict(cls, node_id: str, d: Mapping[str, Any]) -> "NodeSpec":
        tier = str(d.get("tier", node_id))
        return cls(
            id=node_id,
            tier=tier,
            cores=int(d["cores"]),
            ram=float(d["ram"]),
            disk=float(d["disk"]),
            disk_read_rate=float(d["disk_read_rate"]),
            disk_write_rate=float(d["disk_write_rate"]),
            p_idle=float(d["p_idle"]),
            p_busy=float(d["p_busy"]),
            metered=bool(d.get("metered", tier not in CLOUD_TIERS)),
            cluster_size=int(d.get("cluster_size", 1)),
            core_speed=float(d.get("core_speed", 1.0)),
            ram_power_share=float(d.get("ram_power_share", 0.0)),
        )


@dataclass(frozen=True, slots=True)
class LinkSpec:
    """Directed client -> server channel; ``client == server`` means local execution."""
    client: str
    server: str
    bandwidth: float                     # MB/s
    distance: float = 0.0                # m
    handshake_latency: float = 0.0       # s per transfer chunk
    estimated: bool = False

    @property
    def is_local(self) -> bool:
        return self.client == self.server

    @classmethod
    def local(cls, node_id: str) -> "LinkSpec":
        return cls(client=node_id, server=node_id, bandwidth=math.inf)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "LinkSpec":
        return cls(
            client=str(d["client"]),
            server=str(d["server"]),
            bandwidth=float(d["bandwidth"]),
            distance=float(d.get("distance", 0.0)),
            handshake_latency=float(d.get("handshake_latency", 0.0)),
            estimated=bool(d.get("estimated", False)),
        )


@dataclass(frozen=True, slots=True)
class PlatformProfile:
    """
    Behavioral coefficients of a data platform.

    ``work_coeff`` is in reference-core seconds per iteration. Utilizations are
    CPU fractions of the client: processing (local runs, per workload kind),
    idle wait, transmission, generation and local copy. ``spill_fraction`` of
    the input is written to disk per iteration during processing.

    ``idle_wait_by_tier`` overrides the idle-wait utilization for clients of
    a tier, the same way ``disk_rates_by_tier`` overrides the active disk rates.
    """
    name: str
    storage_mode: str
    work_coeff: dict[str, float]
    init_energy_fraction: float
    disk_write_rate_active: float
    disk_read_rate_active: float
    cpu_util_processing: dict[str, float]
    cpu_util_idle_wait: float
    cpu_util_transmission: float = 0.005
    cpu_util_generation: float = 0.25
    cpu_util_copy: float = 0.15
    ingest_rate: float = 40.0                           # MB/s into the DFS
    spill_fraction: float = 0.0
    mem_fraction_processing: float = 0.5
    disk_rates_by_tier: dict[str, tuple[float, float]] = field(default_factory=dict)
    idle_wait_by_tier: dict[str, float] = field(default_factory=dict)

    def active_disk_rates(self, tier: str) -> tuple[float, float]:
        """(read, write) MB/s while processing on a node of ``tier``."""
        if tier in self.disk_rates_by_tier:
            r, w = self.disk_rates_by_tier[tier]
            return float(r), float(w)
        return self.disk_read_rate_active, self.disk_write_rate_active

    def idle_wait_util(self, tier: str) -> float:
        """CPU fraction a client of ``tier`` holds while it waits on a remote server."""
        return float(self.idle_wait_by_tier.get(tier, self.cpu_util_idle_wait))

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("name")
        d["work_coeff"] = dict(self.work_coeff)
        d["cpu_util_processing"] = dict(self.cpu_util_processing)
        d["disk_rates_by_tier"] = {k: [float(r), float(w)] for k, (r, w) in self.disk_rates_by_tier.items()}
        d["idle_wait_by_tier"] = dict(self.idle_wait_by_tier)
        return d

    @classmethod
    def from_dict(cls, name: str, d: Mapping[str, Any]) -> "PlatformProfile":
        return cls(
            name=name,
            storage_mode=str(d["storage_mode"]),
            work_coeff={str(k): float(v) for k, v in d["work_coeff"].items()},
            init_energy_fraction=float(d["init_energy_fraction"]),
            disk_write_rate_active=float(d["disk_write_rate_active"]),
            disk_read_rate_active=float(d["disk_read_rate_active"]),
            cpu_util_processing={str(k): float(v) for k, v in d["cpu_util_processing"].items()},
            cpu_util_idle_wait=float(d["cpu_util_idle_wait"]),
            cpu_util_transmission=float(d.get("cpu_util_transmission", 0.005)),
            cpu_util_generation=float(d.get("cpu_util_generation", 0.25)),
            cpu_util_copy=float(d.get("cpu_util_copy", 0.15)),
            ingest_rate=float(d.get("ingest_rate", 40.0)),
            spill_fraction=float(d.get("spill_fraction", 0.0)),
            mem_fraction_processing=float(d.get("mem_fraction_processing", 0.5)),
            disk_rates_by_tier={
                str(k): (float(v[0]), float(v[1])) for k, v in (d.get("disk_rates_by_tier") or {}).items()
            },
            idle_wait_by_tier={str(k): float(v) for k, v in (d.get("idle_wait_by_tier") or {}).items()},
        )


@dataclass(frozen=True, slots=True)
class WorkloadSpec:
    """
    A workload profile with its synthetic input.

    ``generation_factor``, ``result_fraction`` and ``ingest_factor`` are the
    knobs tuned by phase-fraction calibration.
    """
    name: str
    kind: str
    data_size: float = 3072.0            # MB
    iterations: int = 1
    generation_factor: float = 0.8       # generation_rate = client disk_write_rate * factor
    result_fraction: float = 0.01        # result_size = fraction * data_size
    ingest_factor: float = 1.0           # scales the platform ingest rate

    @property
    def result_size(self) -> float:
        return self.result_fraction * self.data_size

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("name")
        return d

    @classmethod
    def from_dict(cls, name: str, d: Mapping[str, Any]) -> "WorkloadSpec":
        kind = str(d.get("kind", WORKLOAD_KINDS.get(name, "batch")))
        return cls(
            name=name,
            kind=kind,
            data_size=float(d.get("data_size", 3072.0)),
            iterations=int(d.get("iterations", 1 if kind == "batch" else 10)),
            generation_factor=float(d.get("generation_factor", 0.8)),
            result_fraction=float(d.get("result_fraction", 0.01)),
            ingest_factor=float(d.get("ingest_factor", 1.0)),
        )


@dataclass(frozen=True, slots=True)
class Scenario:
    id: int
    client: str
    server: str
    concept: str = ""

    def __post_init__(self):
        if not self.concept:
            object.__setattr__(self, "concept", "non_offloading" if self.client == self.server else "offloading")

    @property
    def is_offloading(self) -> bool:
        return self.concept == "offloading"

    @property
    def label(self) -> str:
        return f"S{self.id} {self.client}->{self.server}"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Scenario":
        return cls(id=int(d["id"]), client=str(d["client"]), server=str(d["server"]),
                   concept=str(d.get("concept", "")))


def phase_plan(scenario: Scenario) -> tuple[str, ...]:
    """Ordered phases executed for ``scenario``."""
    return PHASES if scenario.is_offloading else LOCAL_PHASES


@dataclass(frozen=True)
class Catalog:
    """
    Nodes, links, platforms, workloads and scenarios of one experiment plan.

    Links are keyed by (client, server). Local links are implicit.
    """
    nodes: dict[str, NodeSpec]
    links: dict[tuple[str, str], LinkSpec]
    platforms: dict[str, PlatformProfile]
    workloads: dict[str, WorkloadSpec]
    scenarios: tuple[Scenario, ...]
    constants: Constants = Constants()
    metadata: dict[str, Any] = field(default_factory=dict)

    # --- lookup ---------------------------------------------------------
    def node(self, node_id: str) -> NodeSpec:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise KeyError(f"unknown node '{node_id}'") from None

    def link(self, client: str, server: str) -> LinkSpec:
        if client == server:
            return LinkSpec.local(client)
        try:
            return self.links[(client, server)]
        except KeyError:
            raise KeyError(f"no link {client}->{server}") from None

    def platform(self, name: str) -> PlatformProfile:
        try:
            return self.platforms[name]
        except KeyError:
            raise KeyError(f"unknown platform '{name}'") from None

    def workload(self, name: str) -> WorkloadSpec:
        try:
            return self.workloads[name]
        except KeyError:
            raise KeyError(f"unknown workload '{name}'") from None

    def scenario(self, scenario_id: int) -> Scenario:
        for s in self.scenarios:
            if s.id == scenario_id:
                return s
        raise KeyError(f"unknown scenario {scenario_id}")

    def baseline_for(self, scenario: Scenario) -> Scenario | None:
        for s in self.scenarios:
            if s.client == scenario.client and not s.is_offloading:
                return s
        return None

    # --- derived catalogs -----------------------------------------------
    def restrict(self, scenarios: Iterable[int] | None = None,
                 platforms: Iterable[str] | None = None,
                 workloads: Iterable[str] | None = None) -> "Catalog":
        """Copy limited to the given scenario ids, platform and workload names."""
        sc = self.scenarios
        if scenarios is not None:
            wanted = {int(i) for i in scenarios}
            unknown = wanted - {s.id for s in sc}
            if unknown:
                raise KeyError(f"unknown scenario(s) {sorted(unknown)}")
            sc = tuple(s for s in sc if s.id in wanted)
        pl = self.platforms
        if platforms is not None:
            pl = {n: self.platform(n) for n in platforms}
        wl = self.workloads
        if workloads is not None:
            wl = {n: self.workload(n) for n in workloads}
        return replace(self, scenarios=sc, platforms=pl, workloads=wl)

    def with_node(self, node: NodeSpec) -> "Catalog":
        return replace(self, nodes={**self.nodes, node.id: node})

    def with_link(self, link: LinkSpec) -> "Catalog":
        return replace(self, links={**self.links, (link.client, link.server): link})

    def with_platform(self, platform: PlatformProfile) -> "Catalog":
        return replace(self, platforms={**self.platforms, platform.name: platform})

    def with_workload(self, workload: WorkloadSpec) -> "Catalog":
        return replace(self, workloads={**self.workloads, workload.name: workload})

    def scaled_power(self, k: float) -> "Catalog":
        """Every node's p_idle and p_busy multiplied by ``k``."""
        return replace(self, nodes={
            i: replace(n, p_idle=n.p_idle * k, p_busy=n.p_busy * k) for i, n in self.nodes.items()
        })

    # --- serialization --------------------------------------------------
    def to_dict(self) -> dict[str, Any]:
        return {
            "constants": self.constants.to_dict(),
            "nodes": {i: n.to_dict() for i, n in self.nodes.items()},
            "links": [l.to_dict() for l in self.links.values()],
            "platforms": {n: p.to_dict() for n, p in self.platforms.items()},
            "workloads": {n: w.to_dict() for n, w in self.workloads.items()},
            "scenarios": [s.to_dict() for s in self.scenarios],
            "metadata": dict(self.metadata),
        }

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> "Catalog":
        """Build without validation; see :func:`offload_energy.models.plan.validate_plan`."""
        links = [LinkSpec.from_dict(x) for x in (d.get("links") or [])]
        return cls(
            nodes={str(i): NodeSpec.from_dict(str(i), n) for i, n in (d.get("nodes") or {}).items()},
            links={(l.client, l.server): l for l in links},
            platforms={str(n): PlatformProfile.from_dict(str(n), p) for n, p in (d.get("platforms") or {}).items()},
            workloads={str(n): WorkloadSpec.from_dict(str(n), w) for n, w in (d.get("workloads") or {}).items()},
            scenarios=tuple(Scenario.from_dict(s) for s in (d.get("scenarios") or [])),
            constants=Constants.from_dict(d.get("constants") or {}),
            metadata=dict(d.get("metadata") or {}),
        )
