"""Exact symbolic calculator for families Seiberg-Witten invariants of fibrewise connected sums."""

from .char_classes import (
    BundleError,
    OrientedRealBundle,
    VirtualBundle,
    bundle_difference,
    bundle_sum,
    equivariant_euler,
    generalized_binomial,
    inverse_equivariant_euler,
    total_segre,
    twist_chern,
    twist_segre,
)
from .equivariant_poly import (
    EquivClass,
    LaurentClass,
    LaurentDescentError,
    coefficient,
    epoly_mul,
    eval_y_zero,
    substitute_x,
)
from .graded_base import (
    BaseClass,
    RingError,
    RingMismatchError,
    RingPresentation,
    base_mul,
    integrate,
    ring_from_dict,
    ring_preset,
    truncated_monomial_ring,
)
from .localization import (
    LocalizationError,
    LocalizedClass,
    assemble,
    fixed_pushforward,
    localize,
    localized_pushforward,
)
from .proj_bundle import (
    ProjectiveModel,
    build_projective_model,
    gysin_pushforward,
    normal_data,
    projective_bundle,
    reduce,
    restrict_to_fixed,
)
from .sw_calc import (
    DegreeRangeError,
    MonopoleSideData,
    NonPolynomialResidueError,
    SWError,
    SWFunctional,
    WindowError,
    bk_special_case,
    connect_sum_sw,
    degree_obstruction,
    monopole_degree,
    sw_evaluate,
    sw_evaluate_extended,
    wedge_sw_localized,
)

__version__ = "0.1.0"
