"""Analytic discs in the unit ball, their pulled-back kernels and multiplier-algebra invariants."""

from .errors import (
    DegenerateComposition,
    DegenerateFamily,
    DenominatorRootInDisc,
    DenominatorZero,
    DuplicatePoints,
    MalformedInput,
    NonConvergence,
    NotCompletePick,
    NotNormalized,
    ParameterOutOfRange,
    PeriodicSupport,
    PickDiscError,
    Singularity,
    TransversalityViolation,
    ZeroAtOrigin,
)
from .functions import (
    MobiusTransform,
    Polynomial,
    RationalFunction,
    arc_midpoint,
    blaschke,
    compose_mobius,
    mobius_fixing_pm1,
    mobius_to_pm1,
)
from .embedding import (
    BoundaryCollisionData,
    CrossingPair,
    EmbeddingMap,
    ValidationReport,
    collision_data,
    find_self_crossings,
    make_f_r,
    make_f_rs,
    normalize_crossing,
    polynomial_embedding,
    semi_invariant,
    symmetric_parameter,
    transform_semi_invariant,
    validate_embedding,
)
from .kernel import (
    DiscKernel,
    PickMatrixReport,
    RotationInvariantKernel,
    gram_matrix,
    kernel_difference_norm_sq,
    kernel_eval,
    metric,
    metric_sq,
    pick_matrix,
    psd_report,
    szego_kernel,
)
from .series import (
    CoefficientSequence,
    bergman_coeffs,
    coeffs_from_reciprocal,
    complete_pick_check,
    embedding_dimension,
    normalize,
    reciprocal_coeffs,
    renewal_limit,
    szego_coeffs,
    weighted_hardy_coeffs,
)
from .isomorphism import (
    candidate_automorphisms,
    collision_bound_check,
    invariant_ratio,
    matched_path_limits,
    richardson_first_order,
    same_crossing_type,
    t_ladder,
    weighted_hardy_obstruction,
)

__version__ = "0.1.0"
