"""Exact tensorial curvature measures of convex polytopes and Monte-Carlo
verification of the integral-geometric formulae that relate them."""

from .coeffs import (
    alpha,
    c_norm,
    cor38_coeff,
    d_coeff,
    iota,
    kappa_coeff,
    lambda_coeff,
    thm31_coeff,
)
from .conemoment import ConeMomentBudgetError, MomentResult, cone_sphere_moment
from .flats import (
    FlatBatch,
    MotionBatch,
    random_rotation,
    sample_flats_hitting,
    sample_motions_coupling,
)
from .measures import (
    MeasureIndex,
    MeasureValue,
    curvature_measure,
    intrinsic_volume,
    tcm,
    tcm_relation_check,
    valuation,
)
from .polytope import (
    EmptyPolytopeError,
    GeometryError,
    GrazingIntersectionError,
    Polytope,
    Region,
    builtin_polytope,
    cross_polytope,
    cube,
    intersect_flat,
    polytope_moment,
    random_polytope,
    simplex,
)
from .rng import stream
from .special import gamma_half, kappa_ball, omega
from .symtensor import SymTensor, metric_tensor, subspace_metric_tensor, vector_power
from .verify import (
    SteinerReport,
    VerificationReport,
    crofton_lhs,
    crofton_rhs,
    crofton_verify,
    independence_indices,
    independence_rank,
    kinematic_lhs,
    kinematic_rhs,
    kinematic_verify,
    steiner_check,
)

__version__ = "0.1.0"
