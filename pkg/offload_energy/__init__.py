"""
offload-energy - Energy-aware simulation of task offloading across edge and cloud.

Main Components:
- Models: Nodes, links, data platforms, workloads and the scenario catalog
- Energy: Linear power model and per-phase time/energy
- Simulate: Scenario pipeline, matrix runner, synthetic traces
- Measurement: RAPL, power-meter and resource log parsing, phase segmentation
- Calibrate: Fits from published tables or measured traces
- Report: Result rows, savings, aggregates and plot data
- Storage: SQLite run archive
"""

__version__ = "1.0.0"

from offload_energy.models.plan import default_catalog, load_plan, validate_plan
from offload_energy.energy.power import instantaneous_power, phase_energy
from offload_energy.simulate.engine import run_matrix, run_scenario
from offload_energy.simulate.oracle import integrate_oracle
from offload_energy.report.rows import rows_from_results, savings_percent
from offload_energy.report.aggregate import aggregate_report

__all__ = [
    # Models
    'default_catalog',
    'load_plan',
    'validate_plan',

    # Energy
    'instantaneous_power',
    'phase_energy',

    # Simulation
    'run_scenario',
    'run_matrix',
    'integrate_oracle',

    # Reporting
    'rows_from_results',
    'savings_percent',
    'aggregate_report',
]
