"""Shared-connectivity vertex distances and cluster-density benchmarks."""

from .distances import (
    DistanceMeasure,
    PairDistance,
    burt,
    distance,
    distance_values,
    jaccard,
    otsuka_ochiai,
    pairwise,
)
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    emit_csv,
    export_distance_matrix,
    load_config,
    run_experiment,
)
from .graph import Graph, GraphError, build_graph, figure_one_graph, load_edge_list, save_edge_list
from .metrics import (
    ClusterSummary,
    cluster_summaries,
    global_mean_distance,
    global_mean_distances,
    intra_cluster_density,
    mean_intra_cluster_distance,
)
from .ppm import (
    BENCHMARK_GRAPHS,
    ClusterAssignment,
    PpmParams,
    expected_edge_counts,
    expected_neighborhood_growth,
    generate_ppm,
    load_assignment,
    save_assignment,
)
from .stats import CorrelationResult, pearson, pooled

__version__ = "0.1.0"
