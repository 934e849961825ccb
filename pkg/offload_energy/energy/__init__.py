"""Power model and closed-form phase time/energy."""

from .phases import (
    PhaseEstimate, dfs_copy_time_energy, disk_penalty, generation_rate, generation_time_energy,
    ingest_rate, init_platform_estimate, processing_estimate, processing_time, processing_wait_energy,
    transmission_energy, transmission_estimate, transmission_time,
)
from .power import instantaneous_power, phase_energy

__all__ = [
    "instantaneous_power", "phase_energy", "PhaseEstimate",
    "transmission_time", "transmission_energy", "transmission_estimate",
    "disk_penalty", "processing_time", "processing_wait_energy", "processing_estimate",
    "init_platform_estimate", "generation_rate", "generation_time_energy", "ingest_rate",
    "dfs_copy_time_energy",
]
