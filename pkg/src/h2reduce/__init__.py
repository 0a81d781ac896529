"""Globally optimal H2 model-order reduction by one.

For a stable, strictly proper SISO transfer function with distinct poles,
the first-order optimality conditions for the best order-(N-1) approximant
form a diagonal-quadratic polynomial system. Its solutions are read off the
simultaneous eigenvalues of commuting multiplication matrices on the
2^N-dimensional quotient ring, so every critical point is enumerated and
the global optimum is certified, not just a local one.
"""

from .dqideal import (
    DiagQuadSystem,
    NormalFormElement,
    SparsePoly,
    basis_monomials,
    multiply_by_variable,
    normal_form,
)
from .errors import (
    BasisSizeError,
    CommutationDefectError,
    DefectiveEigenstructureError,
    DegenerateLeadingCoefficientError,
    H2ReduceError,
    IllConditionedError,
    InputError,
    NoAdmissibleSolutionError,
    NotStrictlyProperError,
    NumericalError,
    PoleZeroCancellationError,
    ReductionBudgetError,
    RepeatedPoleError,
    UnstablePoleError,
    ValidationError,
)
from .foc import CriticalPoint, build_M, foc_residual, recover_candidate
from .poly import (
    Polynomial,
    derivative,
    eval_poly,
    is_hurwitz,
    reflect,
    root_residuals,
    roots,
    vandermonde_solve,
)
from .reduce import (
    ReductionReport,
    critical_value,
    select_global,
    solve_reduction,
)
from .stetter import (
    EigenSolution,
    EigenSolutionSet,
    MultiplicationMatrices,
    build_critical_value_matrix,
    build_multiplication_matrices,
    common_eigen_solutions,
    evaluate_poly_at_matrices,
)
from .tf import (
    TransferFunction,
    ValidatedSystem,
    h2_distance,
    h2_norm,
    strip_feedthrough,
    validate,
)
from .tolerances import PROFILES, Tolerances
from .cli import from_pole_residue, generate_relaxation

__version__ = "0.1.0"

__all__ = [
    "BasisSizeError",
    "CommutationDefectError",
    "CriticalPoint",
    "DefectiveEigenstructureError",
    "DegenerateLeadingCoefficientError",
    "DiagQuadSystem",
    "EigenSolution",
    "EigenSolutionSet",
    "H2ReduceError",
    "IllConditionedError",
    "InputError",
    "MultiplicationMatrices",
    "NoAdmissibleSolutionError",
    "NormalFormElement",
    "NotStrictlyProperError",
    "NumericalError",
    "PROFILES",
    "PoleZeroCancellationError",
    "Polynomial",
    "ReductionBudgetError",
    "ReductionReport",
    "RepeatedPoleError",
    "SparsePoly",
    "Tolerances",
    "TransferFunction",
    "UnstablePoleError",
    "ValidatedSystem",
    "ValidationError",
    "basis_monomials",
    "build_M",
    "build_critical_value_matrix",
    "build_multiplication_matrices",
    "common_eigen_solutions",
    "critical_value",
    "derivative",
    "eval_poly",
    "evaluate_poly_at_matrices",
    "foc_residual",
    "from_pole_residue",
    "generate_relaxation",
    "h2_distance",
    "h2_norm",
    "is_hurwitz",
    "multiply_by_variable",
    "normal_form",
    "recover_candidate",
    "reflect",
    "root_residuals",
    "roots",
    "select_global",
    "solve_reduction",
    "strip_feedthrough",
    "validate",
    "vandermonde_solve",
]
