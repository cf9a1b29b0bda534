"""Graph spanners with relaxed stretch targets, sourcewise variants,
additive emulators, and layered hard instances, all auditable against
exact distance oracles at desk scale.
"""

from .graphs import (
    UNREACHED,
    BfsResult,
    Emulator,
    Graph,
    GraphFormatError,
    Spanner,
    bfs,
    bfs_distances,
    canonical_path,
    dump_emulator,
    dump_graph,
    hop_distance_matrix,
    load_emulator,
    load_graph,
    norm_edge,
    path_is_valid,
    random_graph,
    trace_owner_path,
    trace_parent_path,
    weighted_sssp,
)
from .clustering import (
    HubClustering,
    ClusterLevel,
    ClusterSequence,
    hub_clustering,
    cluster_sequence,
    nearest_center,
)
from .hybrid import HybridParams, build_hybrid, closest_pair_path, hybrid_params, path_suffix
from .sourcewise import SourceSet, SwParams, build_sourcewise_mult, sw_params
from .additive import (
    AdditiveParams,
    PairClass,
    additive_params,
    build_sourcewise_additive,
    build_sourcewise_additive4,
    build_sourcewise_emulator2,
    build_subsetwise_plus2,
    classify_pairs,
    compute_value,
)
from .lowerbound import LayeredGraph, MissingChain, build_lb_graph, find_missing_chain, lb_audit
from .verify import (
    StretchReport,
    StretchSpec,
    additive_spec,
    hybrid_spec,
    size_bound,
    size_report,
    sourcewise_mult_spec,
    subsetwise_spec,
    verify_emulator,
    verify_spanner,
)

__version__ = "0.1.0"

__all__ = [
    "UNREACHED",
    "BfsResult",
    "Emulator",
    "Graph",
    "GraphFormatError",
    "Spanner",
    "bfs",
    "bfs_distances",
    "canonical_path",
    "dump_emulator",
    "dump_graph",
    "hop_distance_matrix",
    "load_emulator",
    "load_graph",
    "norm_edge",
    "path_is_valid",
    "random_graph",
    "trace_owner_path",
    "trace_parent_path",
    "weighted_sssp",
    "HubClustering",
    "ClusterLevel",
    "ClusterSequence",
    "hub_clustering",
    "cluster_sequence",
    "nearest_center",
    "HybridParams",
    "build_hybrid",
    "closest_pair_path",
    "hybrid_params",
    "path_suffix",
    "SourceSet",
    "SwParams",
    "build_sourcewise_mult",
    "sw_params",
    "AdditiveParams",
    "PairClass",
    "additive_params",
    "build_sourcewise_additive",
    "build_sourcewise_additive4",
    "build_sourcewise_emulator2",
    "build_subsetwise_plus2",
    "classify_pairs",
    "compute_value",
    "LayeredGraph",
    "MissingChain",
    "build_lb_graph",
    "find_missing_chain",
    "lb_audit",
    "StretchReport",
    "StretchSpec",
    "additive_spec",
    "hybrid_spec",
    "size_bound",
    "size_report",
    "sourcewise_mult_spec",
    "subsetwise_spec",
    "verify_emulator",
    "verify_spanner",
]
