"""Numerical toolkit for the Dirichlet eta function in the critical strip."""

from .errors import (
    ContourTooCloseError,
    DomainError,
    EtaLabError,
    InvalidArgumentError,
    NonConvergenceError,
    PartitionError,
    RefinementError,
    SingularPointError,
)
from .eta import (
    DEFAULT_CONFIG,
    EtaEvaluation,
    EvalConfig,
    Method,
    StripPoint,
    eta,
    eta_derivative,
    eta_many,
    eta_partial_sum,
    eta_reflected,
    functional_equation_residual,
    log_gamma,
    zeta_from_eta,
)

__version__ = "0.1.0"

__all__ = [
    "ContourTooCloseError",
    "DEFAULT_CONFIG",
    "DomainError",
    "EtaEvaluation",
    "EtaLabError",
    "EvalConfig",
    "InvalidArgumentError",
    "Method",
    "NonConvergenceError",
    "PartitionError",
    "RefinementError",
    "SingularPointError",
    "StripPoint",
    "eta",
    "eta_derivative",
    "eta_many",
    "eta_partial_sum",
    "eta_reflected",
    "functional_equation_residual",
    "log_gamma",
    "zeta_from_eta",
]
