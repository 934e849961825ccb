"""Linear CPU-utilization power model."""

from __future__ import annotations

from ..models.catalog import NodeSpec


def instantaneous_power(node: NodeSpec, utilization: float) -> float:
    """
    Power drawn by ``node`` at CPU ``utilization``.

    Args:
        node: Node with p_idle / p_busy endpoints (W)
        utilization: CPU fraction in [0, 1]

    Returns:
        p_idle + utilization * (p_busy - p_idle), in watts
    """
    if not 0.0 <= utilization <= 1.0:
        raise ValueError(f"utilization {utilization} outside [0, 1]")
    return node.p_idle + utilization * (node.p_busy - node.p_idle)


def phase_energy(node: NodeSpec, duration: float, utilization: float) -> float:
    """Energy (J) of holding ``utilization`` for ``duration`` seconds."""
    if duration < 0:
        raise ValueError(f"negative duration {duration}")
    if duration == 0:
        return 0.0
    return instantaneous_power(node, utilization) * duration
