# offload_energy/calibrate/published.py
"""Published measurements the default catalog is calibrated against."""

# Processing time (s) on the edge node, platform -> workload
PROCESSING_TIMES: dict[str, dict[str, float]] = {
    "hadoop": {"grep": 47.0, "wordcount": 109.0, "kmeans": 260.0, "pagerank": 600.0},
    "spark": {"grep": 40.0, "wordcount": 75.0, "kmeans": 201.0, "pagerank": 502.0},
    "flink": {"grep": 18.0, "wordcount": 72.0, "kmeans": 62.0, "pagerank": 421.0},
}

REFERENCE_NODE = "edge_node"

# Mean link bandwidth (MB/s) quoted for individual links
QUOTED_BANDWIDTHS: dict[tuple[str, str], float] = {
    ("rpi", "edge_node"): 2.7,
    ("rpi", "edge_server"): 4.1,
    ("rpi", "private_cloud"): 5.8,
    ("rpi", "public_cloud"): 6.2,
    ("edge_node", "edge_server"): 8.6,
}

# Share of client energy per phase group while the edge node offloads
PHASE_FRACTION_TARGETS: dict[str, dict[str, float]] = {
    "batch": {"generation": 0.657, "transmission": 0.162, "copy": 0.075, "processing": 0.108},
    "iterative": {"generation": 0.518, "transmission": 0.078, "copy": 0.038, "processing": 0.364},
}

# Absolute client energies (J) quoted for single phases
ENERGY_ANCHORS: dict[str, float] = {
    "edge_node->edge_server transmission": 60.0,
    "rpi->edge_server transmission": 445.0,
    "edge_server copy (low)": 107.0,
    "edge_server copy (high)": 153.0,
}

# Active disk rates (MB/s, read/write) on the edge node while processing
EDGE_NODE_DISK_RATES: dict[str, tuple[float, float]] = {
    "hadoop": (3.5, 3.7),
    "spark": (1.8, 1.7),
    "flink": (1.2, 1.1),
}

# Headline savings (%) used by report labels and acceptance tests
RPI_DESTINATION_SAVINGS = {"edge_node": 44.7, "edge_server": 49.6, "private_cloud": 56.6, "public_cloud": 54.5}
RPI_MEAN_SAVINGS = 51.6
OVERALL_MEAN_SAVINGS = 55.2
EDGE_SERVER_SAVINGS_EXCL_GREP = {"hadoop": 74.1, "spark": 62.9, "flink": 55.5}
BATCH_VS_ITERATIVE_RPI = 79.6
