"""SQLite run archive."""

import pytest

from offload_energy.models.plan import dump_plan
from offload_energy.report import rows_from_results
from offload_energy.simulate.engine import run_matrix
from offload_energy.storage import RunArchive, get_results, get_series, list_runs


@pytest.fixture(scope="module")
def small_matrix(catalog):
    return run_matrix(catalog.restrict([1, 3], ["flink"], ["grep"]), seed=5)


def test_archive_and_read_back(small_matrix, catalog, tmp_path):
    db = tmp_path / "runs" / "archive.db"
    rows = rows_from_results(small_matrix.results)
    run_id = RunArchive(db).archive(small_matrix.results, rows, seed=5, plan_yaml=dump_plan(catalog), note="smoke")

    runs = list_runs(str(db))
    assert runs.run_id.tolist() == [run_id]
    assert (runs.seed.iloc[0], runs.n_cells.iloc[0], runs.n_failed.iloc[0], runs.note.iloc[0]) == (5, 2, 0, "smoke")

    res = get_results(str(db), run_id)
    assert res.scenario_id.tolist() == [1, 3]
    assert res.total_client_energy_j.tolist() == pytest.approx([r.total_client_energy for r in rows])
    assert res.savings_vs_baseline_pct.iloc[0] == 0.0


def test_series_query(small_matrix, tmp_path):
    db = tmp_path / "archive.db"
    archive = RunArchive(db)
    rows = rows_from_results(small_matrix.results)
    first = archive.archive(small_matrix.results, rows, seed=5)
    second = archive.archive(small_matrix.results, rows, seed=5)
    assert second == first + 1

    power = get_series(str(db), second, "power_w", scenario_id=3)
    expected = small_matrix.results[1].traces["power_w"]
    assert power.t.tolist() == pytest.approx(expected.t.tolist())
    assert power.value.tolist() == pytest.approx(expected.values.tolist())
    assert set(power.platform) == {"flink"}

    energy = get_series(str(db), first, "energy_j")
    assert set(energy.scenario_id) == {1, 3}


def test_empty_series_query(small_matrix, tmp_path):
    db = tmp_path / "archive.db"
    run_id = RunArchive(db).archive(small_matrix.results, rows_from_results(small_matrix.results), seed=5)
    with pytest.raises(ValueError, match="no 'voltage'"):
        get_series(str(db), run_id, "voltage")
    with pytest.raises(ValueError):
        get_series(str(db), run_id + 1, "power_w")


def test_failed_write_rolls_back_and_releases(small_matrix, tmp_path):
    db = tmp_path / "archive.db"
    archive = RunArchive(db)
    run_id = archive.new_run(seed=5)
    # the second entry has no traces; the first one's samples must not survive
    with pytest.raises(AttributeError):
        archive.write_traces(run_id, [small_matrix.results[0], object()])
    with pytest.raises(ValueError, match="no 'power_w'"):
        get_series(str(db), run_id, "power_w")

    # no lingering writer lock
    assert archive.new_run(seed=6) == run_id + 1
    assert list_runs(str(db)).seed.tolist() == [5, 6]
