"""Exception hierarchy shared by all eta_lab modules."""

from __future__ import annotations


class EtaLabError(Exception):
    """Base class for every error raised by eta_lab."""


class InvalidArgumentError(EtaLabError, ValueError):
    """An argument is malformed (empty range, non-positive count, ...)."""


class DomainError(EtaLabError, ValueError):
    """A point lies outside the region where an operation is defined."""


class SingularPointError(DomainError):
    """The requested value is a pole or involves division by an exact zero."""


class NonConvergenceError(EtaLabError, ArithmeticError):
    """A summation could not reach the requested tolerance within its term budget.

    The best available value and its error estimate are kept so callers can
    decide whether to accept a degraded result.
    """

    def __init__(self, message: str, best_value: complex, error_estimate: float, terms_used: int):
        super().__init__(message)
        self.best_value = best_value
        self.error_estimate = error_estimate
        self.terms_used = terms_used


class EvaluationError(EtaLabError, ArithmeticError):
    """Evaluation failed while tracing a curve; carries the offending parameter."""

    def __init__(self, message: str, param: float):
        super().__init__(message)
        self.param = param


class PartitionError(EtaLabError):
    """No valid step-region boundary exists at the requested step size."""


class RefinementError(EtaLabError, ArithmeticError):
    """Zero refinement did not reach the acceptance residual."""

    def __init__(self, message: str, best_t: float, best_residual: float):
        super().__init__(message)
        self.best_t = best_t
        self.best_residual = best_residual


class ContourTooCloseError(EtaLabError, ArithmeticError):
    """A winding-number contour passes too close to a zero to resolve its phase."""


class CatalogParseError(EtaLabError, ValueError):
    """A zero catalog line could not be parsed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class CatalogValidationError(EtaLabError, ValueError):
    """A zero catalog parsed cleanly but violates a record invariant."""
