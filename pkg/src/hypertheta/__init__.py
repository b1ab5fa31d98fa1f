"""Genus-2 theta functions, their quadratic identity catalog, and the
algebraic addition law they induce, plus the elliptic SO(3) matrix
identity used as a genus-1 cross-check."""

from .addition import (
    A_LABELS,
    A_ORDER,
    AdditionRun,
    ConstantsVector,
    DegenerateDenominator,
    DivisorHit,
    FVector,
    HyperellipticValue,
    add_algebraic,
    add_direct,
    add_vector,
    constants_vector,
    doubled_values,
    doubled_values_direct,
    f_eval,
    f_vector,
    verify_addition,
)
from .backends import BACKEND_NAME, HAS_NUMBA
from .elliptic_so3 import (
    JacobiTriple,
    RotationMatrix,
    component_residuals,
    euler_lhs,
    euler_rhs,
    jacobi_eval,
    x_rotation,
    yang_baxter_residual,
    z_rotation,
)
from .identity_catalog import (
    ArgSelector,
    Domain,
    Identity,
    IdentityTerm,
    NoConsistentSign,
    ResidualReport,
    ThetaFactor,
    build_catalog,
    evaluate_identity,
    general_duplication,
    load_catalog,
    resolve_sign,
    riemann_matrix,
    save_catalog,
    verify_catalog,
)
from .sampling import SampleAssignment, assignments_for, make_rng
from .theta_core import (
    DEFAULT_POLICY,
    EvalPoint,
    HalfIntegerParityUndefined,
    InvalidPeriod,
    ORIGIN,
    PeriodMatrix,
    PrecisionPolicy,
    RadiusExceeded,
    Scale,
    ThetaCharacteristic,
    clear_theta_cache,
    double_periods,
    is_odd,
    reduce_characteristic,
    theta_eval,
    truncation_radius,
)

__version__ = "0.1.0"

__all__ = [
    "A_LABELS",
    "A_ORDER",
    "AdditionRun",
    "BACKEND_NAME",
    "ConstantsVector",
    "DegenerateDenominator",
    "DivisorHit",
    "FVector",
    "HAS_NUMBA",
    "HyperellipticValue",
    "JacobiTriple",
    "RotationMatrix",
    "add_algebraic",
    "add_direct",
    "add_vector",
    "component_residuals",
    "constants_vector",
    "doubled_values",
    "doubled_values_direct",
    "euler_lhs",
    "euler_rhs",
    "f_eval",
    "f_vector",
    "jacobi_eval",
    "verify_addition",
    "x_rotation",
    "yang_baxter_residual",
    "z_rotation",
    "ArgSelector",
    "Domain",
    "Identity",
    "IdentityTerm",
    "NoConsistentSign",
    "ResidualReport",
    "SampleAssignment",
    "ThetaFactor",
    "assignments_for",
    "build_catalog",
    "evaluate_identity",
    "general_duplication",
    "load_catalog",
    "make_rng",
    "resolve_sign",
    "riemann_matrix",
    "save_catalog",
    "verify_catalog",
    "DEFAULT_POLICY",
    "EvalPoint",
    "HalfIntegerParityUndefined",
    "InvalidPeriod",
    "ORIGIN",
    "PeriodMatrix",
    "PrecisionPolicy",
    "RadiusExceeded",
    "Scale",
    "ThetaCharacteristic",
    "clear_theta_cache",
    "double_periods",
    "is_odd",
    "reduce_characteristic",
    "theta_eval",
    "truncation_radius",
    "__version__",
]
