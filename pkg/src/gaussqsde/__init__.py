"""Gaussian quantum white noise: QSDE coefficients, master equations and a collision-model oracle."""
from .bath import (
    DoublingCoefficients,
    GaussianBathParams,
    ItoTable,
    ValidationReport,
    characteristic_function,
    doubling_coefficients,
    ito_table,
    moments_from_characteristic,
    validate_bath,
)
from .coeffs import (
    HPParams,
    NormalOrderedCoeffs,
    TimeOrderedCoeffs,
    hp_to_normal,
    normal_to_hp,
    time_to_normal,
    unitarity_residual,
)
from .errors import (
    DomainError,
    InconsistencyError,
    NotUnitaryError,
    SingularityError,
    ValidationError,
)
from .evolution import (
    StepFunction,
    Trajectory,
    build_liouvillian,
    evolve_density,
    evolve_heisenberg,
    kernel_evaluator,
    matrix_element,
)
from .generator import (
    GaussianGenerator,
    GaussianModel,
    build_G,
    build_generator,
    doubled_channels,
    gks_matrix,
    heisenberg_generator,
    schrodinger_generator,
)
from .operator_core import Superoperator, matrix_exponential, partial_trace, trace_distance
from .oracle import OracleConfig, OracleResult, convergence_study, run_oracle, step_unitary

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "DoublingCoefficients",
    "GaussianBathParams",
    "GaussianGenerator",
    "GaussianModel",
    "HPParams",
    "InconsistencyError",
    "ItoTable",
    "NormalOrderedCoeffs",
    "NotUnitaryError",
    "OracleConfig",
    "OracleResult",
    "SingularityError",
    "StepFunction",
    "Superoperator",
    "TimeOrderedCoeffs",
    "Trajectory",
    "ValidationError",
    "ValidationReport",
    "build_G",
    "build_generator",
    "build_liouvillian",
    "characteristic_function",
    "convergence_study",
    "doubled_channels",
    "doubling_coefficients",
    "evolve_density",
    "evolve_heisenberg",
    "gks_matrix",
    "heisenberg_generator",
    "hp_to_normal",
    "ito_table",
    "kernel_evaluator",
    "matrix_element",
    "matrix_exponential",
    "moments_from_characteristic",
    "normal_to_hp",
    "partial_trace",
    "run_oracle",
    "schrodinger_generator",
    "step_unitary",
    "time_to_normal",
    "trace_distance",
    "unitarity_residual",
    "validate_bath",
]
