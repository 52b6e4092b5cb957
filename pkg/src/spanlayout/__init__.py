"""Stress-based 2-D graph embedding with a tunable local-to-global neighborhood size."""

from .connectivity import (
    DEFAULT_DECAY,
    DEFAULT_WALK_CAP,
    NeighborhoodPairs,
    connectivity_matrix,
    connectivity_matrix_spectral,
    select_neighborhoods,
)
from .graph import (
    Graph,
    GraphFormatError,
    DisconnectedGraphError,
    load_graph,
    loads_graph,
    save_graph,
    largest_component,
    apsp,
    generate_sbm_lattice,
    generate_watts_strogatz,
)
from .highdim import affinity_matrix, embed_points, load_points
from .metrics import (
    ClusterAssignment,
    MetricReport,
    cluster_distortion,
    compute_metrics,
    greedy_modularity_clusters,
    neighborhood_error,
    normalized_stress,
)
from .optimizer import (
    EmbedParams,
    Embedding,
    embed,
    embed_prepared,
    prepare,
)
from .render import render_svg
from .sweep import SweepRow, median_by_k, run_sweep

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_DECAY",
    "DEFAULT_WALK_CAP",
    "NeighborhoodPairs",
    "connectivity_matrix",
    "connectivity_matrix_spectral",
    "select_neighborhoods",
    "Graph",
    "GraphFormatError",
    "DisconnectedGraphError",
    "load_graph",
    "loads_graph",
    "save_graph",
    "largest_component",
    "apsp",
    "generate_sbm_lattice",
    "generate_watts_strogatz",
    "affinity_matrix",
    "embed_points",
    "load_points",
    "ClusterAssignment",
    "MetricReport",
    "cluster_distortion",
    "compute_metrics",
    "greedy_modularity_clusters",
    "neighborhood_error",
    "normalized_stress",
    "EmbedParams",
    "Embedding",
    "embed",
    "embed_prepared",
    "prepare",
    "render_svg",
    "SweepRow",
    "median_by_k",
    "run_sweep",
    "__version__",
]
