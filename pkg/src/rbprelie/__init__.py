"""Exact computations for weighted Rota-Baxter pre-Lie algebras:
axiom checking, the three cochain complexes and their cohomology,
formal deformations, abelian extensions, and two-term structures."""

from .algebras import (
    Bimodule,
    InvalidStructureError,
    PreLieAlgebra,
    RBBimodule,
    RBPreLieAlgebra,
    Verdict,
    Violation,
    check_bimodule,
    check_jacobi,
    check_morphism,
    check_pre_lie,
    check_rb_bimodule,
    check_rb_operator,
    derived_bimodule,
    regular_bimodule,
    star_algebra,
    sub_adjacent_bracket,
)
from .cochains import Cochain, RBACochain
from .complexes import (
    ComplexKind,
    cohomology_dims,
    differential_matrix,
    les_check,
    phi,
    phi_literal,
    pla_differential,
    rba_differential,
    rbo_differential,
    rbo_differential_expanded,
)
from .linalg import RationalMatrix, Rational, kernel_basis, rank, solve_linear

__all__ = [
    "Bimodule",
    "Cochain",
    "ComplexKind",
    "InvalidStructureError",
    "PreLieAlgebra",
    "RBACochain",
    "RBBimodule",
    "RBPreLieAlgebra",
    "Rational",
    "RationalMatrix",
    "Verdict",
    "Violation",
    "check_bimodule",
    "check_jacobi",
    "check_morphism",
    "check_pre_lie",
    "check_rb_bimodule",
    "check_rb_operator",
    "cohomology_dims",
    "derived_bimodule",
    "differential_matrix",
    "kernel_basis",
    "les_check",
    "phi",
    "phi_literal",
    "pla_differential",
    "rank",
    "rba_differential",
    "rbo_differential",
    "rbo_differential_expanded",
    "regular_bimodule",
    "solve_linear",
    "star_algebra",
    "sub_adjacent_bracket",
]
