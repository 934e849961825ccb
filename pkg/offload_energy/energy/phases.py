# offload_energy/energy/phases.py
"""
Closed-form time and client energy for each phase of a scenario.

Every function is pure. Client energy is zero for unmetered clients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from ..models.catalog import Constants, LinkSpec, NodeSpec, PlatformProfile, WorkloadSpec
from .power import phase_energy

DEFAULT_CONSTANTS = Constants()


@dataclass(frozen=True, slots=True)
class PhaseEstimate:
    """
    Time and client-side outcome of one phase.

    Attributes:
        phase: Phase name
        duration: Seconds
        client_energy: Joules drawn by the client (0 when unmetered)
        mean_client_cpu_util: CPU fraction the client holds during the phase
        bytes_moved: MB moved by the phase (0 where inapplicable)
        disk_read_rate: Client disk read during the phase (MB/s)
        disk_write_rate: Client disk write during the phase (MB/s)
        mem_fraction: Share of client RAM in use
    """
    phase: str
    duration: float
    client_energy: float
    mean_client_cpu_util: float
    bytes_moved: float = 0.0
    disk_read_rate: float = 0.0
    disk_write_rate: float = 0.0
    mem_fraction: float = 0.0

    @property
    def mean_power(self) -> float:
        return self.client_energy / self.duration if self.duration > 0 else 0.0


def _client_energy(client: NodeSpec, duration: float, utilization: float) -> float:
    return phase_energy(client, duration, utilization) if client.metered else 0.0


# --- transmission -------------------------------------------------------

def transmission_time(link: LinkSpec, size: float, constants: Constants = DEFAULT_CONSTANTS) -> float:
    """
    Seconds to ship ``size`` MB over ``link``.

    Bandwidth term plus, per chunk, the handshake latency and the round-trip
    propagation delay. Local links cost nothing.
    """
    if size < 0:
        raise ValueError(f"negative size {size}")
    if link.is_local or size == 0:
        return 0.0
    n_chunks = math.ceil(size / constants.chunk_size)
    per_chunk = link.handshake_latency + 2.0 * link.distance / constants.signal_speed
    return size / link.bandwidth + n_chunks * per_chunk


def transmission_energy(client: NodeSpec, link: LinkSpec, size: float, platform: PlatformProfile,
                        constants: Constants = DEFAULT_CONSTANTS) -> float:
    return _client_energy(client, transmission_time(link, size, constants), platform.cpu_util_transmission)


def transmission_estimate(client: NodeSpec, link: LinkSpec, size: float, platform: PlatformProfile,
                          phase: str = "data_transmission",
                          constants: Constants = DEFAULT_CONSTANTS) -> PhaseEstimate:
    t = transmission_time(link, size, constants)
    return PhaseEstimate(
        phase=phase,
        duration=t,
        client_energy=_client_energy(client, t, platform.cpu_util_transmission),
        mean_client_cpu_util=platform.cpu_util_transmission,
        bytes_moved=size,
        disk_read_rate=size / t if (t > 0 and phase == "data_transmission") else 0.0,
        mem_fraction=constants.mem_fraction_idle,
    )


# --- processing ---------------------------------------------------------

def disk_penalty(platform: PlatformProfile, workload: WorkloadSpec, server: NodeSpec) -> float:
    """Seconds spent spilling intermediate data to the server's disk."""
    spilled = platform.spill_fraction * workload.data_size * workload.iterations
    if spilled == 0:
        return 0.0
    return spilled / min(platform.disk_write_rate_active, server.disk_write_rate)


def processing_time(platform: PlatformProfile, workload: WorkloadSpec, server: NodeSpec) -> float:
    """Seconds ``server`` needs to process ``workload`` on ``platform``."""
    try:
        coeff = platform.work_coeff[workload.name]
    except KeyError:
        raise ValueError(f"platform '{platform.name}' has no work coefficient for '{workload.name}'") from None
    return workload.iterations * coeff / server.capacity + disk_penalty(platform, workload, server)


def processing_wait_energy(client: NodeSpec, wait: float, platform: PlatformProfile) -> float:
    """Client energy while it idles ``wait`` seconds for a remote server."""
    return _client_energy(client, wait, platform.idle_wait_util(client.tier))


def _processing_profile(client: NodeSpec, server: NodeSpec, platform: PlatformProfile,
                        workload: WorkloadSpec, constants: Constants) -> tuple[float, float, float, float]:
    """(utilization, disk read, disk write, mem fraction) the client holds while processing runs."""
    if client.id == server.id:
        r, w = platform.active_disk_rates(client.tier)
        return platform.cpu_util_processing[workload.kind], r, w, platform.mem_fraction_processing
    return platform.idle_wait_util(client.tier), 0.0, 0.0, constants.mem_fraction_idle


def processing_estimate(client: NodeSpec, server: NodeSpec, platform: PlatformProfile, workload: WorkloadSpec,
                        constants: Constants = DEFAULT_CONSTANTS) -> PhaseEstimate:
    t = processing_time(platform, workload, server)
    u, r, w, mem = _processing_profile(client, server, platform, workload, constants)
    return PhaseEstimate("data_processing", t, _client_energy(client, t, u), u,
                         bytes_moved=workload.data_size, disk_read_rate=r, disk_write_rate=w, mem_fraction=mem)


def init_platform_estimate(client: NodeSpec, server: NodeSpec, platform: PlatformProfile, workload: WorkloadSpec,
                           constants: Constants = DEFAULT_CONSTANTS) -> PhaseEstimate:
    """
    Platform start-up, sized so it takes ``init_energy_fraction`` of the
    init + processing energy at the processing-phase utilization.
    """
    f = platform.init_energy_fraction
    t = f / (1.0 - f) * processing_time(platform, workload, server)
    u, _, _, mem = _processing_profile(client, server, platform, workload, constants)
    return PhaseEstimate("init_platform", t, _client_energy(client, t, u), u, mem_fraction=mem)


# --- generation and copy ------------------------------------------------

def generation_rate(client: NodeSpec, workload: WorkloadSpec) -> float:
    return client.disk_write_rate * workload.generation_factor


def generation_time_energy(client: NodeSpec, workload: WorkloadSpec, platform: PlatformProfile,
                           constants: Constants = DEFAULT_CONSTANTS) -> PhaseEstimate:
    """Synthetic input generation on the client; independent of the server."""
    rate = generation_rate(client, workload)
    t = workload.data_size / rate if workload.data_size > 0 else 0.0
    u = platform.cpu_util_generation
    return PhaseEstimate("data_generation", t, _client_energy(client, t, u), u,
                         bytes_moved=workload.data_size, disk_write_rate=rate if t > 0 else 0.0,
                         mem_fraction=constants.mem_fraction_idle)


def ingest_rate(server: NodeSpec, platform: PlatformProfile, ingest_factor: float = 1.0) -> float:
    return min(server.disk_write_rate, platform.ingest_rate * ingest_factor)


def dfs_copy_time_energy(server: NodeSpec, size: float, platform: PlatformProfile, client: NodeSpec,
                         ingest_factor: float = 1.0,
                         constants: Constants = DEFAULT_CONSTANTS) -> PhaseEstimate:
    """
    Copy of ``size`` MB into the server's distributed file system.

    An offloading client idles during the copy; a local client performs it.
    """
    if size < 0:
        raise ValueError(f"negative size {size}")
    rate = ingest_rate(server, platform, ingest_factor)
    t = size / rate if size > 0 else 0.0
    if client.id == server.id:
        u = platform.cpu_util_copy
        est = PhaseEstimate("copy_to_dfs", t, _client_energy(client, t, u), u, bytes_moved=size,
                            disk_read_rate=rate, disk_write_rate=rate, mem_fraction=constants.mem_fraction_idle)
    else:
        u = platform.idle_wait_util(client.tier)
        est = PhaseEstimate("copy_to_dfs", t, _client_energy(client, t, u), u, bytes_moved=size,
                            mem_fraction=constants.mem_fraction_idle)
    return est if t > 0 else replace(est, disk_read_rate=0.0, disk_write_rate=0.0)
