"""Ternary cyclic codes from trace sequences, the Steiner systems their duals
support, and GF(3) rank certificates separating them from the projective
point-line designs."""

__version__ = "0.1.0"

from .codes import (
    LinearCode,
    WeightDistribution,
    build_quadric_code,
    build_welch_code,
    dual,
    pless_consistency,
    predicted_a4_dual,
    predicted_weights_shortened,
    predicted_weights_welch,
    shorten,
    shortened_wd_transfer,
    weight_distribution,
)
from .design import (
    DesignCertificate,
    DesignRefutation,
    IncidenceStructure,
    blocks_disjoint,
    certify_support_design_streaming,
    cyclic_shift_permutation,
    enumerate_low_weight_dual_supports,
    frobenius_permutation,
    incidence_matrix,
    p_rank,
    support_design,
    verify_automorphism,
    verify_t_design,
)
from .gf import (
    FieldElement,
    FieldParams,
    SquareClass,
    build_field,
    coordinate_points,
    square_class,
    trace,
)
from .linalg import TernaryMatrix
from .oracles import (
    build_partition_sets,
    verify_difference_map_fibers,
    verify_no_square_subset_relations,
    verify_power_ratio_identity,
    verify_power_system_unique_solution,
    verify_shifted_pair_counts,
)
from .pg import ch_rank_formula, inequivalence_certificate, pg_point_line_design

__all__ = [
    "FieldElement",
    "FieldParams",
    "SquareClass",
    "build_field",
    "coordinate_points",
    "square_class",
    "trace",
    "TernaryMatrix",
    "LinearCode",
    "WeightDistribution",
    "build_welch_code",
    "build_quadric_code",
    "dual",
    "weight_distribution",
    "predicted_weights_welch",
    "predicted_weights_shortened",
    "predicted_a4_dual",
    "pless_consistency",
    "shorten",
    "shortened_wd_transfer",
    "IncidenceStructure",
    "DesignCertificate",
    "DesignRefutation",
    "enumerate_low_weight_dual_supports",
    "support_design",
    "certify_support_design_streaming",
    "verify_t_design",
    "incidence_matrix",
    "p_rank",
    "blocks_disjoint",
    "verify_automorphism",
    "cyclic_shift_permutation",
    "frobenius_permutation",
    "pg_point_line_design",
    "ch_rank_formula",
    "inequivalence_certificate",
    "build_partition_sets",
    "verify_power_system_unique_solution",
    "verify_no_square_subset_relations",
    "verify_difference_map_fibers",
    "verify_shifted_pair_counts",
    "verify_power_ratio_identity",
]
