"""Exact Clifford algebra arithmetic and intertwiners between generator sets.

Two sets of generators of ``Cl(p, q)`` that satisfy the same anticommutation
relations are related by ``gamma^a = c T^-1 beta^a T`` with ``c`` central;
this package classifies the relationship and computes ``T`` exactly.
"""

from .algebra import (
    CliffordAlgebra,
    Multivector,
    Signature,
    blade_product,
    center_support,
    commutes,
    grade_project,
    is_central,
    multi_index,
    mv_inverse,
    mv_mul,
    parity_split,
    pi_project,
    trace,
)
from .errors import (
    AdmissibilityError,
    CliffordError,
    DivisionByZero,
    FieldMismatch,
    NoCandidateFound,
    NotInvertible,
    OddDimensionRequired,
    ParseError,
    RelationViolation,
    SignatureMismatch,
    UnclassifiableCase,
    UnclassifiableVolume,
    VerificationFailed,
)
from .fields import ComplexExact, ComplexFloat, GaussianRational, RealExact, field_from_name
from .generators import (
    BasisClassification,
    CommutationProfile,
    GeneratorSet,
    classify_basis,
    commutation_profile,
    gen_blade,
    gen_reciprocal,
    pi_profile,
    sigma_transform,
    trace_profile,
    validate_generators,
)
from .instances import GenSpec, Instance, generate
from .reynolds import (
    OddCase,
    SolveResult,
    classify_odd,
    op_F,
    op_H,
    op_H_even,
    op_P,
    solve,
    solve_even,
    solve_odd,
    sum_identities,
    uniqueness_check,
    verify_intertwiner,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "BasisClassification",
    "CliffordAlgebra",
    "CliffordError",
    "CommutationProfile",
    "ComplexExact",
    "ComplexFloat",
    "DivisionByZero",
    "FieldMismatch",
    "GaussianRational",
    "GenSpec",
    "GeneratorSet",
    "Instance",
    "Multivector",
    "NoCandidateFound",
    "NotInvertible",
    "OddCase",
    "OddDimensionRequired",
    "ParseError",
    "RealExact",
    "RelationViolation",
    "Signature",
    "SignatureMismatch",
    "SolveResult",
    "UnclassifiableCase",
    "UnclassifiableVolume",
    "VerificationFailed",
    "blade_product",
    "center_support",
    "classify_basis",
    "classify_odd",
    "commutation_profile",
    "commutes",
    "field_from_name",
    "gen_blade",
    "gen_reciprocal",
    "generate",
    "grade_project",
    "is_central",
    "multi_index",
    "mv_inverse",
    "mv_mul",
    "op_F",
    "op_H",
    "op_H_even",
    "op_P",
    "parity_split",
    "pi_profile",
    "pi_project",
    "sigma_transform",
    "solve",
    "solve_even",
    "solve_odd",
    "sum_identities",
    "trace",
    "trace_profile",
    "uniqueness_check",
    "validate_generators",
    "verify_intertwiner",
]

