"""Trace readers, segmentation and the export/ingest round trip."""

import io

import numpy as np
import pytest

from offload_energy.errors import SegmentationError, TraceParseError
from offload_energy.measure.export import (
    MARKERS_FILE, POWER_METER_FILE, RAPL_FILE, RESOURCE_FILE, export_traces, is_experiment_dir, power_meter_lines,
    rapl_lines, read_experiment,
)
from offload_energy.measure.readers import (
    DEFAULT_RAPL_MAX_RANGE, read_bandwidth_log, read_power_meter_log, read_rapl_log, read_resource_log,
    unwrap_deltas,
)
from offload_energy.measure.segment import (
    PhaseMarker, PhaseMarkerLog, integrate_energy, read_phase_markers, segment_phases,
)
from offload_energy.simulate.engine import run_scenario
from offload_energy.simulate.traces import MeasurementSeries


# --- readers ---------------------------------------------------------------

def test_rapl_wraparound():
    text = f"0.0 {DEFAULT_RAPL_MAX_RANGE - 1_000_000}\n1.0 500000\n2.0 2500000\n"
    e = read_rapl_log(io.StringIO(text))
    np.testing.assert_allclose(e.values, [0.0, 1.5, 3.5])
    assert e.source == "rapl"


def test_unwrap_arbitrary_wrap_positions():
    rng = np.random.default_rng(11)
    for _ in range(200):
        max_range = int(rng.integers(1_000, 10**12))
        n = int(rng.integers(2, 60))
        steps = rng.integers(0, max_range, size=n - 1)
        offset = int(rng.integers(0, max_range))
        counters = (offset + np.concatenate([[0], np.cumsum(steps)])) % max_range
        np.testing.assert_array_equal(unwrap_deltas(counters, max_range), steps)


def test_rapl_writer_reader_agree():
    energy = MeasurementSeries("energy_j", [0.0, 1.0, 2.0, 3.0], [0.0, 40.0, 95.5, 120.25])
    text = rapl_lines(energy, offset=990_000_000, max_range=1_000_000_000)
    back = read_rapl_log(io.StringIO(text), max_range=1_000_000_000)
    np.testing.assert_allclose(back.values, energy.values, atol=1e-6)


@pytest.mark.parametrize("text, line_no", [
    ("0 10\n1 x\n", 2),
    ("0 10\n\n1 20 30\n", 3),
    ("0 10\n0 20\n", 2),
    ("0 -5\n", 1),
])
def test_rapl_parse_errors(text, line_no):
    with pytest.raises(TraceParseError) as err:
        read_rapl_log(io.StringIO(text))
    assert err.value.line_no == line_no


def test_power_meter():
    p = read_power_meter_log(io.StringIO("0 5.0 1.0\n1 5.0 2.0\n2 5.1 2.0\n"))
    np.testing.assert_allclose(p.values, [5.0, 10.0, 10.2])
    with pytest.raises(TraceParseError):
        read_power_meter_log(io.StringIO("0 5.0 -1.0\n"))


def test_rapl_single_sample_is_empty():
    e = read_rapl_log(io.StringIO("3.0 123456\n"))
    assert len(e) == 0
    assert e.values.size == 0
    assert len(read_rapl_log(io.StringIO(""))) == 0


def test_power_meter_export_reads_back_bit_exact():
    power = MeasurementSeries("power_w", [0.0, 0.5, 1.25, 2.0], [0.1, 3.7, 2.0 / 3.0, 5.123456789])
    back = read_power_meter_log(io.StringIO(power_meter_lines(power, end=2.0)))
    assert np.array_equal(back.t, power.t)
    assert np.array_equal(back.values, power.values)


@pytest.mark.parametrize("reader, first", [
    (read_power_meter_log, b"0 5.0 1.0\n"),
    (read_rapl_log, b"0 10\n"),
    (read_bandwidth_log, b"0 8.0\n"),
    (read_resource_log, b"100,20.0,5.0,2048,0,0\n"),
])
def test_invalid_utf8_reports_line(reader, first, tmp_path):
    path = tmp_path / "trace.log"
    path.write_bytes(first + b"1 5.0 \xff\xfe\n")
    with pytest.raises(TraceParseError) as err:
        reader(path)
    assert err.value.line_no == 2


def test_invalid_utf8_in_byte_stream():
    with pytest.raises(TraceParseError) as err:
        read_power_meter_log(io.BytesIO(b"0 5.0 1.0\n1 5.0 \xff\xfe\n"))
    assert err.value.line_no == 2
    assert "UTF-8" in err.value.message


def test_resource_log_units_and_headers():
    text = ('\ufeff"epoch","usr","sys","used","read","writ"\n'
            "100,20.0,5.0,2048,0,11429478\n"
            "101,30.0,0.0,2050,1048576,0\n")
    s = read_resource_log(io.StringIO(text))
    np.testing.assert_allclose(s["cpu_pct"].values, [25.0, 30.0])
    assert s["disk_write_mbps"].values[0] == pytest.approx(10.9, abs=1e-3)
    assert s["disk_read_mbps"].values[1] == 1.0
    assert s["mem_mb"].t.tolist() == [100.0, 101.0]


def test_resource_log_rejects_short_rows():
    with pytest.raises(TraceParseError) as err:
        read_resource_log(io.StringIO('"header"\n1,2,3\n'))
    assert err.value.line_no == 2


def test_bandwidth_log():
    t, bw = read_bandwidth_log(io.StringIO("0 8.0\n1 9.0\n2 8.8\n"))
    assert t.tolist() == [0.0, 1.0, 2.0]
    assert bw.mean() == pytest.approx(8.6)


# --- integration and segmentation --------------------------------------------

def test_trapezoid_exact_on_piecewise_linear(ramp_power):
    assert integrate_energy(ramp_power) == pytest.approx(500.0)
    assert integrate_energy(ramp_power, (2.5, 12.5)) == pytest.approx(243.75)
    assert integrate_energy(ramp_power, (4.0, 4.0)) == 0.0


def test_hold_rule(ramp_power):
    assert integrate_energy(ramp_power, rule="hold") == pytest.approx(450.0)
    assert integrate_energy(ramp_power, (2.5, 7.5), rule="hold") == pytest.approx(2.5 * 10 + 2.5 * 20)


def test_integration_errors(ramp_power):
    with pytest.raises(SegmentationError):
        integrate_energy(ramp_power, (-1.0, 5.0))
    with pytest.raises(SegmentationError):
        integrate_energy(MeasurementSeries("power_w", [0.0], [1.0]))
    with pytest.raises(ValueError):
        integrate_energy(ramp_power, rule="simpson")


def test_marker_log_parsing():
    log = read_phase_markers(io.StringIO("data_generation 0 10\n\ndata_processing 10 25.5\n"))
    assert [m.phase for m in log] == ["data_generation", "data_processing"]
    assert log.span == (0.0, 25.5)
    assert read_phase_markers(io.StringIO(log.to_text())) == log
    with pytest.raises(TraceParseError):
        read_phase_markers(io.StringIO("data_generation 5 5\n"))


def test_overlapping_markers():
    with pytest.raises(SegmentationError):
        PhaseMarkerLog((PhaseMarker("a", 0, 10), PhaseMarker("b", 9, 12)))


def test_segment_from_cumulative_energy():
    series = {
        "energy_j": MeasurementSeries("energy_j", [0.0, 10.0, 20.0], [0.0, 100.0, 400.0]),
        "cpu_pct": MeasurementSeries("cpu_pct", [0.0, 10.0], [20.0, 60.0]),
    }
    markers = PhaseMarkerLog((PhaseMarker("data_generation", 0.0, 10.0), PhaseMarker("data_processing", 10.0, 15.0)))
    a, b = segment_phases(series, markers)
    assert a.client_energy == pytest.approx(100.0)
    assert b.client_energy == pytest.approx(150.0)
    assert a.mean_client_cpu_util == pytest.approx(0.2)
    assert b.mean_client_cpu_util == pytest.approx(0.6)


def test_markers_outside_trace():
    series = {"power_w": MeasurementSeries("power_w", [0.0, 10.0], [5.0, 5.0])}
    with pytest.raises(SegmentationError):
        segment_phases(series, PhaseMarkerLog((PhaseMarker("data_processing", 5.0, 12.0),)))


# --- round trip --------------------------------------------------------------

@pytest.mark.parametrize("scenario, energy_file", [(7, RAPL_FILE), (3, POWER_METER_FILE), (10, RAPL_FILE)])
def test_export_ingest_round_trip(catalog, tmp_path, scenario, energy_file):
    res = run_scenario(scenario, "spark", "wordcount", catalog, seed=4)
    d = export_traces(res, tmp_path / "cell")
    assert is_experiment_dir(d)
    assert (d / energy_file).exists() and (d / MARKERS_FILE).exists() and (d / RESOURCE_FILE).exists()

    exp = read_experiment(d)
    assert exp.meta["scenario_id"] == scenario
    measured = {p.phase: p for p in segment_phases(exp.series, exp.markers)}
    assert set(measured) == {p.phase for p in res.phases if p.duration > 0}
    for p in (p for p in res.phases if p.duration > 0):
        m = measured[p.phase]
        assert m.duration == pytest.approx(p.duration, rel=1e-9)
        assert m.client_energy == pytest.approx(p.client_energy, rel=1e-2)
        assert m.mean_client_cpu_util == pytest.approx(p.mean_client_cpu_util, rel=1e-6)
        assert m.disk_write_rate == pytest.approx(p.disk_write_rate, rel=1e-6, abs=1e-12)


def test_round_trip_total_is_tight(catalog, tmp_path):
    res = run_scenario(1, "hadoop", "grep", catalog, seed=2)
    exp = read_experiment(export_traces(res, tmp_path / "rpi"))
    total = sum(p.client_energy for p in segment_phases(exp.series, exp.markers))
    assert total == pytest.approx(res.total_client_energy, rel=1e-9)


def test_export_needs_traces(catalog, tmp_path):
    res = run_scenario(7, "spark", "grep", catalog, traces=False)
    with pytest.raises(ValueError):
        export_traces(res, tmp_path / "x")


def test_missing_markers(catalog, tmp_path):
    d = export_traces(run_scenario(7, "flink", "grep", catalog, seed=0), tmp_path / "cell")
    (d / MARKERS_FILE).unlink()
    with pytest.raises(FileNotFoundError):
        read_experiment(d)
