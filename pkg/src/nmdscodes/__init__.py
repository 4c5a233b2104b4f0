"""Near-MDS elliptic-curve codes of length p^2 and their support designs.

Pipeline: pick (q, p) with triple_conditions / search_parameters, find a
curve with p^2 rational points (find_curve), build the evaluation code
from a trace-zero divisor (make_divisor + build_code), then analyze:
weight distributions, minimum-weight support designs, and NMDS
certificates, each checked two independent ways where feasible.
"""

from .errors import BudgetError, CertificationError, HypothesisError
from .finite_field import (
    FieldElement,
    FieldSpec,
    QuadraticExtension,
    frobenius,
    is_square,
    quadratic_extension,
    smallest_nonsquare,
    sqrt,
)
from .elliptic_curve import (
    Curve,
    GroupStructure,
    Point,
    PointGroupMap,
    find_trace_zero_point,
    point_group_isomorphism,
    point_order,
)
from .subset_designs import (
    AbelianGroup,
    DesignCheckReport,
    DesignInstance,
    DesignParameters,
    GroupElement,
    brute_force_count_table,
    brute_force_counts,
    count_subsets,
    count_subsets_full,
    count_subsets_nonzero,
    design_parameters,
    is_design_subset_sums,
    subset_sum_blocks,
    subset_sum_masks,
    verify_design,
)
from .code_builder import (
    DivisorSpec,
    LinearCode,
    RRFunction,
    build_code,
    classify_mds_nmds,
    codeword_vanishing_on,
    dual_code,
    evaluate_rr,
    make_divisor,
    nmds_structural_check,
    rr_basis,
)
from .code_analysis import (
    SupportFamily,
    TwoDesignCertificate,
    WeightDistribution,
    all_weights_nonzero,
    all_weights_nonzero_check,
    am_hypothesis_check,
    certify_two_design,
    disjoint_support_pairing,
    lambda_closed_form,
    lambda_dual_closed_form,
    macwilliams_transform,
    min_weight_count_formula,
    min_weight_supports,
    nmds_weight_distribution,
    pin_min_distance,
    simplicity_bound_h,
    supports_of_weight,
    weight_distribution_bruteforce,
    zero_sum_witness_positions,
)
from .param_search import (
    CurveCertificate,
    ParameterTriple,
    build_table_row,
    find_curve,
    search_parameters,
    triple_conditions,
    verify_curve,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BudgetError",
    "CertificationError",
    "Curve",
    "CurveCertificate",
    "DesignCheckReport",
    "DesignInstance",
    "DesignParameters",
    "DivisorSpec",
    "FieldElement",
    "FieldSpec",
    "GroupElement",
    "GroupStructure",
    "HypothesisError",
    "LinearCode",
    "ParameterTriple",
    "Point",
    "PointGroupMap",
    "QuadraticExtension",
    "RRFunction",
    "SupportFamily",
    "TwoDesignCertificate",
    "WeightDistribution",
    "all_weights_nonzero",
    "all_weights_nonzero_check",
    "am_hypothesis_check",
    "brute_force_count_table",
    "brute_force_counts",
    "build_code",
    "build_table_row",
    "certify_two_design",
    "classify_mds_nmds",
    "codeword_vanishing_on",
    "count_subsets",
    "count_subsets_full",
    "count_subsets_nonzero",
    "design_parameters",
    "disjoint_support_pairing",
    "dual_code",
    "evaluate_rr",
    "find_curve",
    "find_trace_zero_point",
    "frobenius",
    "is_design_subset_sums",
    "is_square",
    "lambda_closed_form",
    "lambda_dual_closed_form",
    "macwilliams_transform",
    "make_divisor",
    "min_weight_count_formula",
    "min_weight_supports",
    "nmds_structural_check",
    "nmds_weight_distribution",
    "pin_min_distance",
    "point_group_isomorphism",
    "point_order",
    "quadratic_extension",
    "rr_basis",
    "search_parameters",
    "simplicity_bound_h",
    "smallest_nonsquare",
    "sqrt",
    "subset_sum_blocks",
    "subset_sum_masks",
    "supports_of_weight",
    "triple_conditions",
    "verify_curve",
    "verify_design",
    "weight_distribution_bruteforce",
    "zero_sum_witness_positions",
]
