"""Power model and closed-form phase estimates."""

import math

import pytest

from offload_energy.calibrate.published import PROCESSING_TIMES
from offload_energy.energy.phases import (
    dfs_copy_time_energy, disk_penalty, generation_time_energy, init_platform_estimate, processing_estimate,
    processing_time, processing_wait_energy, transmission_time,
)
from offload_energy.energy.power import instantaneous_power, phase_energy
from offload_energy.models.catalog import LinkSpec, NodeSpec


def _node(**kw):
    base = dict(id="n", tier="edge_node", cores=4, ram=8, disk=100, disk_read_rate=100, disk_write_rate=100,
                p_idle=10.0, p_busy=50.0)
    base.update(kw)
    return NodeSpec(**base)


def test_power_is_linear_in_utilization():
    n = _node()
    assert instantaneous_power(n, 0.0) == 10.0
    assert instantaneous_power(n, 1.0) == 50.0
    assert instantaneous_power(n, 0.25) == pytest.approx(20.0)


@pytest.mark.parametrize("u", [-0.01, 1.01])
def test_power_rejects_bad_utilization(u):
    with pytest.raises(ValueError):
        instantaneous_power(_node(), u)


def test_phase_energy():
    n = _node()
    assert phase_energy(n, 0.0, 0.5) == 0.0
    assert phase_energy(n, 10.0, 0.5) == pytest.approx(300.0)
    with pytest.raises(ValueError):
        phase_energy(n, -1.0, 0.5)


def test_transmission_time_bandwidth_only():
    link = LinkSpec("rpi", "edge_node", 2.7)
    assert transmission_time(link, 3072.0) == pytest.approx(1137.78, abs=0.01)


def test_transmission_time_chunks_and_distance():
    link = LinkSpec("a", "b", 10.0, distance=2.0e8, handshake_latency=0.5)
    # 100 MB -> 2 chunks, each paying 0.5 s handshake + 2 s round trip
    assert transmission_time(link, 100.0) == pytest.approx(10.0 + 2 * 2.5)


def test_transmission_edge_cases():
    assert transmission_time(LinkSpec.local("rpi"), 3072.0) == 0.0
    assert transmission_time(LinkSpec("a", "b", 1.0, handshake_latency=1.0), 0.0) == 0.0
    with pytest.raises(ValueError):
        transmission_time(LinkSpec("a", "b", 1.0), -1.0)


def test_longer_link_costs_more(catalog):
    size = 3072.0
    near = transmission_time(catalog.link("rpi", "private_cloud"), size, catalog.constants)
    far = transmission_time(catalog.link("rpi", "public_cloud"), size, catalog.constants)
    assert far > near


def test_processing_reproduces_reference_times(catalog):
    en = catalog.node("edge_node")
    for p, row in PROCESSING_TIMES.items():
        for w, t in row.items():
            assert processing_time(catalog.platform(p), catalog.workload(w), en) == pytest.approx(t, rel=1e-9)


def test_processing_platform_ordering(catalog):
    for node_id in ("rpi", "edge_node", "edge_server", "private_cloud"):
        node = catalog.node(node_id)
        for w in catalog.workloads.values():
            t = {p: processing_time(catalog.platform(p), w, node) for p in ("hadoop", "spark", "flink")}
            assert t["flink"] <= t["spark"] <= t["hadoop"]


def test_unknown_workload_coefficient(catalog):
    from dataclasses import replace
    p = replace(catalog.platform("spark"), work_coeff={})
    with pytest.raises(ValueError):
        processing_time(p, catalog.workload("grep"), catalog.node("edge_node"))


def test_disk_penalty_uses_slower_disk(catalog):
    hadoop, km = catalog.platform("hadoop"), catalog.workload("kmeans")
    rpi = catalog.node("rpi")
    expected = hadoop.spill_fraction * km.data_size * km.iterations / min(hadoop.disk_write_rate_active,
                                                                            rpi.disk_write_rate)
    assert disk_penalty(hadoop, km, rpi) == pytest.approx(expected)


def test_waiting_edge_server_costs_more_than_edge_node(catalog):
    p = catalog.platform("hadoop")
    assert processing_wait_energy(catalog.node("edge_server"), 100.0, p) > \
        processing_wait_energy(catalog.node("edge_node"), 100.0, p)


def test_offloaded_processing_runs_at_idle_wait(catalog):
    en, es = catalog.node("edge_node"), catalog.node("edge_server")
    p, w = catalog.platform("flink"), catalog.workload("pagerank")
    est = processing_estimate(en, es, p, w, catalog.constants)
    assert est.mean_client_cpu_util == p.idle_wait_util("edge_node")
    assert est.client_energy == pytest.approx(instantaneous_power(en, p.idle_wait_util("edge_node")) * est.duration)
    local = processing_estimate(en, en, p, w, catalog.constants)
    assert local.mean_client_cpu_util == p.cpu_util_processing["iterative"]
    assert (local.disk_read_rate, local.disk_write_rate) == p.disk_rates_by_tier["edge_node"]


def test_init_share_of_init_plus_processing(catalog):
    en = catalog.node("edge_node")
    for p in catalog.platforms.values():
        w = catalog.workload("wordcount")
        init = init_platform_estimate(en, en, p, w, catalog.constants)
        proc = processing_estimate(en, en, p, w, catalog.constants)
        share = init.client_energy / (init.client_energy + proc.client_energy)
        assert share == pytest.approx(p.init_energy_fraction, rel=1e-9)


def test_generation_is_server_independent(catalog):
    rpi, w, p = catalog.node("rpi"), catalog.workload("grep"), catalog.platform("spark")
    est = generation_time_energy(rpi, w, p, catalog.constants)
    assert est.duration == pytest.approx(w.data_size / (rpi.disk_write_rate * w.generation_factor))
    assert est.disk_write_rate == pytest.approx(rpi.disk_write_rate * w.generation_factor)


def test_idle_wait_override_by_client_tier(catalog):
    from dataclasses import replace
    p = replace(catalog.platform("spark"), cpu_util_idle_wait=0.02, idle_wait_by_tier={"edge_server": 0.03})
    assert p.idle_wait_util("edge_server") == 0.03
    assert p.idle_wait_util("rpi") == 0.02
    es, cloud = catalog.node("edge_server"), catalog.node("public_cloud")
    est = processing_estimate(es, cloud, p, catalog.workload("grep"), catalog.constants)
    assert est.mean_client_cpu_util == 0.03
    assert processing_wait_energy(catalog.node("rpi"), 10.0, p) == \
        pytest.approx(10.0 * instantaneous_power(catalog.node("rpi"), 0.02))


def test_copy_rate_is_capped_by_server_disk(catalog):
    es, p = catalog.node("edge_server"), catalog.platform("spark")
    cloud = catalog.node("private_cloud")
    est = dfs_copy_time_energy(cloud, 3072.0, p, es, 10.0, catalog.constants)
    assert est.duration == pytest.approx(3072.0 / cloud.disk_write_rate)
    assert est.mean_client_cpu_util == p.idle_wait_util("edge_server")
    slow = dfs_copy_time_energy(cloud, 3072.0, p, es, 0.1, catalog.constants)
    assert slow.duration == pytest.approx(3072.0 / (p.ingest_rate * 0.1))


def test_zero_size_copy_is_free(catalog):
    es, p = catalog.node("edge_server"), catalog.platform("flink")
    est = dfs_copy_time_energy(es, 0.0, p, es)
    assert est.duration == 0.0 and est.client_energy == 0.0
    assert est.disk_write_rate == 0.0
    with pytest.raises(ValueError):
        dfs_copy_time_energy(es, -5.0, p, es)


def test_unmetered_client_draws_nothing(catalog):
    vm = catalog.node("private_cloud")
    est = generation_time_energy(vm, catalog.workload("grep"), catalog.platform("hadoop"))
    assert est.duration > 0
    assert est.client_energy == 0.0
    assert math.isfinite(est.mean_power)
