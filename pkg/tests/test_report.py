"""Report rows, savings aggregates, text report and plot tables."""

from dataclasses import replace

import pytest

from offload_energy.calibrate.published import (
    BATCH_VS_ITERATIVE_RPI, EDGE_SERVER_SAVINGS_EXCL_GREP, OVERALL_MEAN_SAVINGS, PHASE_FRACTION_TARGETS,
    RPI_DESTINATION_SAVINGS, RPI_MEAN_SAVINGS,
)
from offload_energy.errors import InsufficientCoverageError, UnknownFigureError
from offload_energy.models.catalog import PLATFORM_NAMES
from offload_energy.report import (
    COLUMNS, FIGURES, aggregate_report, format_report, plot_table, read_results_csv, savings_percent,
    with_savings, write_covered_plots, write_results_csv,
)
from offload_energy.report.plotdata import PLOT_COLUMNS
from offload_energy.report.rows import rows_from_results
from offload_energy.simulate.engine import run_matrix


def _row(rows, sid, platform, workload):
    return next(r for r in rows if (r.scenario_id, r.platform, r.workload) == (sid, platform, workload))


@pytest.fixture(scope="module")
def report(rows):
    return aggregate_report(rows)


# --- rows -------------------------------------------------------------------

def test_savings_against_matching_baseline(rows):
    base, off = _row(rows, 1, "spark", "kmeans"), _row(rows, 4, "spark", "kmeans")
    expected = 100.0 * (base.total_client_energy - off.total_client_energy) / base.total_client_energy
    assert savings_percent(off, base) == pytest.approx(expected)
    assert off.savings_vs_baseline == pytest.approx(expected)
    assert base.savings_vs_baseline == 0.0


def test_savings_errors(rows):
    base = _row(rows, 1, "spark", "kmeans")
    with pytest.raises(ValueError, match="does not match"):
        savings_percent(_row(rows, 4, "flink", "kmeans"), base)
    with pytest.raises(ValueError, match="baseline"):
        savings_percent(_row(rows, 5, "spark", "kmeans"), _row(rows, 4, "spark", "kmeans"))
    with pytest.raises(ValueError, match="is 0"):
        savings_percent(_row(rows, 4, "spark", "kmeans"), replace(base, total_client_energy=0.0))


def test_savings_need_a_baseline(rows):
    partial = with_savings([r for r in rows if r.scenario_id in (2, 3)])
    assert all(r.savings_vs_baseline is None for r in partial)


def test_row_totals(rows):
    for r in rows:
        assert sum(r.phase_energies) == pytest.approx(r.total_client_energy)
        assert sum(r.phase_times) == pytest.approx(r.total_time)
        assert 0.0 <= r.ram_energy <= r.total_client_energy
    local = _row(rows, 6, "hadoop", "grep")
    assert local.phase_time("data_transmission") == 0.0


def test_results_csv(rows, tmp_path):
    path = write_results_csv(rows, tmp_path / "results.csv")
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header.split(",") == list(COLUMNS)
    assert b"\r\n" not in path.read_bytes()
    assert read_results_csv(path) == rows


def test_results_csv_missing_columns(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("scenario_id,client\n1,rpi\n", encoding="utf-8")
    with pytest.raises(ValueError, match="missing columns"):
        read_results_csv(p)


# --- aggregates -------------------------------------------------------------

def test_headline_savings(report):
    assert report.grand_savings == pytest.approx(OVERALL_MEAN_SAVINGS, abs=5.0)
    assert report.client_savings["rpi"] == pytest.approx(RPI_MEAN_SAVINGS, abs=5.0)
    for dest, target in RPI_DESTINATION_SAVINGS.items():
        assert report.destination_savings["rpi"][dest] == pytest.approx(target, abs=5.0)


def test_cloud_distance_effect(report):
    assert report.cloud_deltas["rpi"]["total_private_lower_pct"] == pytest.approx(2.2, abs=1.5)
    assert report.cloud_deltas["edge_node"]["transmission_private_lower_pct"] == pytest.approx(9.9, abs=3.0)
    assert report.cloud_deltas["edge_server"]["total_public_higher_pct"] == pytest.approx(5.56, abs=2.0)


def test_batch_below_iterative(report):
    assert report.batch_vs_iterative["rpi"] == pytest.approx(BATCH_VS_ITERATIVE_RPI, abs=5.0)


@pytest.mark.parametrize("kind", ["batch", "iterative"])
def test_edge_node_offloading_fractions(report, kind):
    targets = PHASE_FRACTION_TARGETS[kind]
    total = sum(targets.values())
    shares = report.phase_fractions[("edge_node", "offloading", kind)]
    for group, share in targets.items():
        assert shares[group] == pytest.approx(100.0 * share / total, abs=2.0)
    assert sum(shares.values()) == pytest.approx(100.0)


def test_grep_exception_on_edge_server(rows):
    for dest in (11, 12):
        assert _row(rows, dest, "hadoop", "grep").savings_vs_baseline > 0
        for p in ("spark", "flink"):
            assert _row(rows, dest, p, "grep").savings_vs_baseline <= 0


def test_edge_server_savings_without_grep(report):
    assert set(report.edge_server_excl_grep) == set(PLATFORM_NAMES)
    for p, target in EDGE_SERVER_SAVINGS_EXCL_GREP.items():
        assert report.edge_server_excl_grep[p] == pytest.approx(target, abs=3.0)
    es = report.edge_server_excl_grep
    assert es["hadoop"] > es["spark"] > es["flink"]


@pytest.mark.parametrize("sid", [1, 6, 10])
@pytest.mark.parametrize("workload", ["grep", "wordcount", "kmeans", "pagerank"])
def test_baseline_platform_order(rows, sid, workload):
    e = {p: _row(rows, sid, p, workload).total_client_energy for p in PLATFORM_NAMES}
    assert e["flink"] <= e["spark"] <= e["hadoop"]


@pytest.mark.parametrize("sid", [2, 3, 4, 5, 7, 8, 9, 11, 12])
@pytest.mark.parametrize("workload", ["grep", "wordcount", "kmeans", "pagerank"])
def test_offloading_cells_agree_across_platforms(rows, sid, workload):
    e = [_row(rows, sid, p, workload).total_client_energy for p in PLATFORM_NAMES]
    assert max(e) / min(e) - 1.0 < 0.05


def test_platform_ranking(report):
    assert sorted(report.platform_ranking) == list(range(1, 13))
    for ranking in report.platform_ranking.values():
        energies = [e for _, e in ranking]
        assert energies == sorted(energies)


def test_device_comparison(report):
    local = report.device_energy["local"]
    assert set(local) == {"rpi", "edge_node", "edge_server"}
    assert local["rpi"] < local["edge_node"] < local["edge_server"]
    t = report.device_time["local"]
    assert t["rpi"] > t["edge_node"] > t["edge_server"]
    assert report.edge_node_vs_rpi is not None
    assert report.utilization["rpi"]["baseline"] > report.utilization["rpi"]["offloading"]


def test_offloading_saves_energy_outside_grep_exception(rows):
    exception = {(sid, p, "grep") for sid in (11, 12) for p in ("spark", "flink")}
    for r in rows:
        if r.is_offloading and (r.scenario_id, r.platform, r.workload) not in exception:
            assert r.savings_vs_baseline > 0, (r.scenario_id, r.platform, r.workload)


@pytest.mark.parametrize("k", [0.5, 3.0])
def test_power_scale_invariance(catalog, rows, k):
    scaled = rows_from_results(run_matrix(catalog.scaled_power(k), seed=0, traces=False).results)
    by_key = {(r.scenario_id, r.platform, r.workload): r for r in rows}
    for r in scaled:
        ref = by_key[(r.scenario_id, r.platform, r.workload)]
        assert r.total_client_energy == pytest.approx(k * ref.total_client_energy, rel=1e-9)
        assert r.total_time == pytest.approx(ref.total_time, rel=1e-12)
        if ref.savings_vs_baseline is not None:
            assert r.savings_vs_baseline == pytest.approx(ref.savings_vs_baseline, abs=1e-9)
    a, b = aggregate_report(rows), aggregate_report(scaled)
    for sid, ranking in a.platform_ranking.items():
        assert [p for p, _ in b.platform_ranking[sid]] == [p for p, _ in ranking]


@pytest.mark.parametrize("k", [1e-3, 0.25, 40.0])
def test_scaled_rows_keep_rankings_and_savings(rows, report, k):
    scaled = with_savings([r.scaled(k) for r in rows])
    for r, ref in zip(scaled, rows):
        assert r.total_client_energy == pytest.approx(k * ref.total_client_energy)
        assert r.ram_energy == pytest.approx(k * ref.ram_energy)
        if ref.savings_vs_baseline is not None:
            assert r.savings_vs_baseline == pytest.approx(ref.savings_vs_baseline, abs=1e-9)
    rep = aggregate_report(scaled)
    assert rep.grand_savings == pytest.approx(report.grand_savings, abs=1e-9)
    assert rep.edge_server_excl_grep == pytest.approx(report.edge_server_excl_grep, abs=1e-9)
    for sid, ranking in report.platform_ranking.items():
        assert [p for p, _ in rep.platform_ranking[sid]] == [p for p, _ in ranking]


def test_aggregate_needs_rows():
    with pytest.raises(ValueError):
        aggregate_report([])


# --- text report --------------------------------------------------------------

def test_report_text_is_deterministic(rows):
    a = format_report(aggregate_report(rows))
    b = format_report(aggregate_report(list(rows)))
    assert a == b
    assert "the 51.6% RPI claim" in a
    assert "the 55.2% overall claim" in a
    for section in ("(a)", "(b)", "(c)", "(d)", "(e)", "(f)", "(g)"):
        assert section in a
    assert "Notes" not in a


def test_report_notes(rows):
    text = format_report(aggregate_report(rows), ["PARTIAL RESULTS: 1 cell(s) failed"])
    assert text.endswith("  PARTIAL RESULTS: 1 cell(s) failed\n")


# --- plot data ----------------------------------------------------------------

def test_unknown_figure(rows):
    with pytest.raises(UnknownFigureError) as err:
        plot_table(rows, "sankey")
    assert err.value.valid_ids == sorted(FIGURES)


def test_insufficient_coverage(rows):
    with pytest.raises(InsufficientCoverageError) as err:
        plot_table([r for r in rows if r.scenario_id != 3], "rpi-energy")
    assert any(m.startswith("rpi->edge_server") for m in err.value.missing)


def test_rpi_energy_table(rows):
    df = plot_table(rows, "rpi-energy")
    assert list(df.columns) == PLOT_COLUMNS
    assert len(df) == 4 * 5 * 3
    cell = df[(df.panel == "kmeans") & (df.x == "private_cloud") & (df.series == "flink")]
    assert cell.value.iloc[0] == pytest.approx(_row(rows, 4, "flink", "kmeans").total_client_energy)


def test_cpu_ram_split(rows):
    df = plot_table(rows, "cpu-ram-energy")
    for (panel, x), g in df.groupby(["panel", "x"]):
        assert set(g.series) == {"cpu", "ram"}
        assert (g.value >= 0).all()


def test_covered_plots(rows, tmp_path):
    written = write_covered_plots(rows, tmp_path)
    assert {p.name for p in written} == {f"plot_{fid}.csv" for fid in FIGURES}
    only_rpi = write_covered_plots([r for r in rows if r.client == "rpi"], tmp_path / "rpi")
    assert {p.name for p in only_rpi} == {"plot_rpi-energy.csv", "plot_transmission.csv"}
