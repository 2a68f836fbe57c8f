"""Attributed random-graph alignment toolkit.

Correlated attributed Erdos-Renyi pair generation, two polynomial-time
anchor-based aligners with their seeded subroutines, a feasibility-region
classifier, and a Monte Carlo sweep harness with a CSV/CLI/service surface.
"""

from .attr_rich import (
    align_attr_rich,
    anchor_match_counts,
    build_anchors,
    common_attribute_count,
    common_count_matrix,
    threshold_x,
    threshold_y,
)
from .attr_sparse import (
    DensePlan,
    SparsePlan,
    align_attr_sparse,
    plan_dispatch,
    threshold_z,
)
from .graph import AttributedGraph, EdgeFormatError, GraphLabelError, Permutation
from .harness import (
    Overrides,
    RegionClass,
    SweepConfig,
    TrialRecord,
    classify_region,
    parse_sweep_config,
    run_seeded_dense_trial,
    run_trial,
    sweep_csv,
)
from .model import (
    GraphPairInstance,
    ModelParams,
    dump_pair,
    generate_pair,
    sample_base_graph,
    seeded_params,
    seeded_view,
    subsample,
    trial_rng,
)
from .results import AlignmentResult, AnchorConflict, AnchorSet, FailureKind
from .seeded import (
    SparsePhaseState,
    dense_seed_counts,
    seeded_dense_align,
    seeded_sparse_align,
    sparse_phase_stats,
)

__all__ = [
    "AlignmentResult",
    "AnchorConflict",
    "AnchorSet",
    "AttributedGraph",
    "DensePlan",
    "EdgeFormatError",
    "FailureKind",
    "GraphLabelError",
    "GraphPairInstance",
    "ModelParams",
    "Overrides",
    "Permutation",
    "RegionClass",
    "SparsePhaseState",
    "SparsePlan",
    "SweepConfig",
    "TrialRecord",
    "align_attr_rich",
    "align_attr_sparse",
    "anchor_match_counts",
    "build_anchors",
    "classify_region",
    "common_attribute_count",
    "common_count_matrix",
    "dense_seed_counts",
    "dump_pair",
    "generate_pair",
    "parse_sweep_config",
    "plan_dispatch",
    "run_seeded_dense_trial",
    "run_trial",
    "sample_base_graph",
    "seeded_dense_align",
    "seeded_params",
    "seeded_sparse_align",
    "seeded_view",
    "sparse_phase_stats",
    "subsample",
    "sweep_csv",
    "threshold_x",
    "threshold_y",
    "threshold_z",
    "trial_rng",
]

__version__ = "0.1.0"
