"""Exact symbolic arithmetic: cyclotomic scalars, sparse polynomials,
rational functions, linear algebra, and semilinear group actions."""

from .cyclotomic import (
    Cyc,
    ExactFieldError,
    PoleError,
    common_conductor,
    cyclotomic_polynomial,
    euler_phi,
)
from .poly import (
    FieldElement,
    MultiPoly,
    PolyRing,
    exact_divide,
    extend_ring,
    is_square,
    parse_element,
    poly_sqrt,
    sample_specialization,
    transport,
)
from .linalg import (
    identity_matrix,
    kernel,
    mat_det,
    mat_inverse,
    mat_mul,
    mat_rank,
    mat_vec,
    solve,
    zero_matrix,
)
from .action import (
    FieldAutomorphism,
    SemilinearAction,
    invariant_basis_average,
)

__all__ = [
    "Cyc",
    "ExactFieldError",
    "PoleError",
    "common_conductor",
    "cyclotomic_polynomial",
    "euler_phi",
    "FieldElement",
    "MultiPoly",
    "PolyRing",
    "exact_divide",
    "extend_ring",
    "is_square",
    "parse_element",
    "poly_sqrt",
    "sample_specialization",
    "transport",
    "identity_matrix",
    "kernel",
    "mat_det",
    "mat_inverse",
    "mat_mul",
    "mat_rank",
    "mat_vec",
    "solve",
    "zero_matrix",
    "FieldAutomorphism",
    "SemilinearAction",
    "invariant_basis_average",
]
