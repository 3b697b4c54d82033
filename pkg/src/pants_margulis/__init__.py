"""Margulis invariants of affine deformations of three-holed-sphere groups."""
from .errors import DegenerateSystemError, DomainError, EllipticElementError
from .isometry import (
    HyperbolicFrame,
    IsometryClass,
    classify,
    geodesic_length,
    hyperbolic_frame,
    invariant_vector_F,
    neutral_vector_X0,
    trace_sign,
)
from .lorentz_core import (
    CausalClass,
    IsometryLift,
    Sl2Vector,
    Vec21,
    adjoint_action,
    causal_class,
    exp_sl2,
    killing_form,
    minkowski_dot,
    sl2_to_vec,
    vec_to_sl2,
)
from .margulis import (
    AffineIsometry,
    Cocycle,
    SignReport,
    Verdict,
    alpha,
    alpha_displacement,
    alpha_tilde,
    coboundary,
    deformation_path_element,
    extend_cocycle,
    length_derivative_check,
    parabolic_trace_derivative_check,
    sign_scan,
    solve_boundary_cocycle,
)
from .surface_group import (
    HolonomyRep,
    boundary_words,
    enumerate_conjugacy_reps,
    evaluate,
    fricke_construct,
    reduce_word,
)

__version__ = "0.1.0"
