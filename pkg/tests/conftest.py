"""Shared fixtures: the default catalog, one full simulated matrix and small traces."""

import numpy as np
import pytest

from offload_energy.models.plan import default_catalog
from offload_energy.report.rows import rows_from_results
from offload_energy.simulate.engine import run_matrix
from offload_energy.simulate.traces import MeasurementSeries


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def matrix(catalog):
    return run_matrix(catalog, seed=0, traces=False)


@pytest.fixture(scope="session")
def rows(matrix):
    return rows_from_results(matrix.results)


@pytest.fixture
def ramp_power():
    """Piecewise-linear power: 10 W to 30 W over [0, 10], flat 30 W to 20 s."""
    t = np.array([0.0, 5.0, 10.0, 15.0, 20.0])
    p = np.array([10.0, 20.0, 30.0, 30.0, 30.0])
    return MeasurementSeries("power_w", t, p)
