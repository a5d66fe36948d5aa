"""Exact-arithmetic toolkit for Tverberg partitions of point sequences."""

from .exact import (
    DimensionError,
    Matrix,
    Scalar,
    SingularMatrixError,
    det,
    det_sign,
    rank,
    scalar,
    scalar_str,
    solve_linear,
)
from .fillings import (
    DominanceReport,
    Filling,
    InvalidFillingError,
    LevelSplit,
    Monomial,
    SplitResult,
    SplitStage,
    canonical_filling,
    check_split_conditions,
    crossing_pairs,
    dominance_report,
    dominant_split,
    enumerate_valid_fillings,
    filling_from_json,
    filling_to_json,
    find_dominant_filling,
    find_dominating_switch,
    monomial_value,
    rainbow_filling,
    sign_flip_witness,
    split_excess,
    split_trace,
    switch_ratio,
    z_switch,
)
from .partitions import (
    CertificateMismatchError,
    DegeneratePointsError,
    Partition,
    TverbergSystem,
    TverbergVerdict,
    affine_intersection_dim,
    apply_affine,
    blocks,
    build_system,
    decide_tverberg,
    enumerate_proper_partitions,
    enumerate_rainbow,
    enumerate_tverberg,
    is_rainbow,
    is_strong_general_position,
    partition_from_json,
    partition_to_json,
    transform_invariance_check,
    tverberg_number,
)
from .sequences import (
    DominanceProfile,
    NotDominantError,
    PinnedCombinationReport,
    PointSequence,
    Relation,
    SuperDominantSequence,
    chain_exponents,
    classify_pair,
    combination_row,
    default_threshold,
    dominance_profile,
    gen_moment_curve,
    gen_power_sequence,
    gen_super_dominant,
    growth_product,
    growth_ratio,
    is_dominant,
    is_ordered,
    is_pseudo_geometric,
    is_q_increasing,
    is_super_dominant,
    lift,
    monochromatic_subsequence,
    order_permutation,
    ordered_lift,
    product_config_admissible,
    sequence_from_json,
    sequence_to_json,
    solve_prescribed_zeros,
    uniform_exponents,
    verify_pinned_combination,
)

__version__ = "0.1.0"
