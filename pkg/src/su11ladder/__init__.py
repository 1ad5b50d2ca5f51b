"""su(1,1) ladder-operator algebra for radial quantum systems.

Exact symbolic construction and verification of the factorization ladder
operators for the N-dimensional harmonic oscillator, hydrogen atom,
pseudo-harmonic oscillator and Mie-type potential, plus numeric checks of
their spectral and adjointness properties against analytic eigenfunctions
and a finite-difference oracle.
"""

__version__ = "0.1.0"

from .opalg import (
    AlgebraError,
    Coefficient,
    DiffOperator,
    OperatorTerm,
    ParameterMismatch,
    ParameterSet,
    UnknownParameter,
    commutator,
    format_coefficient,
    format_operator,
    multiply,
    normalize,
    substitute,
)
from .systems import (
    SYMBOLS,
    DomainError,
    GeneratorTriple,
    NoFactorizationError,
    SystemKind,
    SystemSpec,
    angular_index,
    build_generators,
    build_hamiltonian_form,
    casimir,
    factorize_system,
    generator_triple,
    ladder_coefficient,
    level,
    schrodinger_factorize,
    verify_factorization_identity,
)
from .special_functions import Eigenfunction, eigenfunction, laguerre, normalization_constant
from .numeric_verify import (
    QuadratureRule,
    WeightKind,
    apply_operator,
    fd_spectrum,
    inner_product,
    verify_adjointness,
    verify_casimir,
    verify_ladder,
)
from .opexpr import parse_operator_expression, print_operator

__all__ = [
    "__version__",
    "AlgebraError",
    "Coefficient",
    "DiffOperator",
    "OperatorTerm",
    "ParameterMismatch",
    "ParameterSet",
    "UnknownParameter",
    "commutator",
    "format_coefficient",
    "format_operator",
    "multiply",
    "normalize",
    "substitute",
    "SYMBOLS",
    "DomainError",
    "GeneratorTriple",
    "NoFactorizationError",
    "SystemKind",
    "SystemSpec",
    "angular_index",
    "build_generators",
    "build_hamiltonian_form",
    "casimir",
    "factorize_system",
    "generator_triple",
    "ladder_coefficient",
    "level",
    "schrodinger_factorize",
    "verify_factorization_identity",
    "Eigenfunction",
    "eigenfunction",
    "laguerre",
    "normalization_constant",
    "QuadratureRule",
    "WeightKind",
    "apply_operator",
    "fd_spectrum",
    "inner_product",
    "verify_adjointness",
    "verify_casimir",
    "verify_ladder",
    "parse_operator_expression",
    "print_operator",
]
