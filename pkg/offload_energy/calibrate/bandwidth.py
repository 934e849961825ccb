# offload_energy/calibrate/bandwidth.py
"""Link bandwidth from per-second throughput logs."""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from ..errors import CalibrationError
from ..models.catalog import Catalog, LinkSpec
from ..measure.readers import read_bandwidth_log

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class BandwidthFit:
    client: str
    server: str
    bandwidth: float        # MB/s, mean over samples
    n_samples: int
    duration: float         # s between first and last sample


def ingest_bandwidth_log(stream, client: str, server: str) -> BandwidthFit:
    """Mean of the logged samples becomes the link bandwidth."""
    t, bw = read_bandwidth_log(stream)
    if bw.size == 0:
        raise CalibrationError(f"empty bandwidth log for {client}->{server}")
    mean = float(np.mean(bw))
    if mean <= 0:
        raise CalibrationError(f"{client}->{server}: mean bandwidth is {mean}")
    return BandwidthFit(client, server, mean, int(bw.size), float(t[-1] - t[0]))


def apply_bandwidth(catalog: Catalog, fit: BandwidthFit) -> Catalog:
    """Measured links are no longer marked estimated."""
    try:
        link = catalog.link(fit.client, fit.server)
    except KeyError:
        link = LinkSpec(fit.client, fit.server, fit.bandwidth)
    logger.info("link %s->%s: %.4g MB/s from %d samples", fit.client, fit.server, fit.bandwidth, fit.n_samples)
    return catalog.with_link(replace(link, bandwidth=fit.bandwidth, estimated=False))
