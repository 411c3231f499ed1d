"""The Dirichlet eta function and its reflection on the closed strip 0 <= sigma <= 1.

``eta(s) = sum_{n>=1} (-1)**(n-1) n**(-s)`` is summed with iterated Aitken
acceleration for ``sigma > 0`` and with a head-plus-Euler-tail transform on
the boundary ``sigma = 0`` where the terms no longer decay.  Results carry the
method used, the number of terms and a heuristic error estimate.

Coordinates follow the usual convention ``eta(sigma + i t) = x_P + i y_P`` with

    x_P =  sum (-1)**(n-1) n**-sigma cos(t log n)
    y_P = -sum (-1)**(n-1) n**-sigma sin(t log n)

and ``eta(1 - s) = x_Q + i y_Q`` with a ``+sin`` in ``y_Q``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import summation
from .errors import DomainError, InvalidArgumentError, NonConvergenceError, SingularPointError
from .gamma import log_gamma

__all__ = [
    "StripPoint",
    "EvalConfig",
    "EtaEvaluation",
    "Method",
    "DEFAULT_CONFIG",
    "as_complex",
    "eta_partial_sum",
    "eta",
    "eta_many",
    "eta_reflected",
    "eta_derivative",
    "eta_derivative_many",
    "coordinate_series",
    "difference_series",
    "x_p",
    "y_p",
    "x_q",
    "y_q",
    "log_gamma",
    "functional_equation_residual",
    "zeta_from_eta",
    "format_real",
]


@dataclass(frozen=True)
class StripPoint:
    """A point ``s = sigma + i t``."""

    sigma: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise InvalidArgumentError(f"non-finite strip point ({self.sigma}, {self.t})")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)

    def reflected(self) -> "StripPoint":
        return StripPoint(1.0 - self.sigma, -self.t)

    def in_closed_strip(self) -> bool:
        return 0.0 <= self.sigma <= 1.0


PointLike = Union[StripPoint, complex, float, int]


def as_complex(s: PointLike) -> complex:
    if isinstance(s, StripPoint):
        return s.s
    z = complex(s)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InvalidArgumentError(f"non-finite argument {s!r}")
    return z


class Method(str, enum.Enum):
    RAW = "raw-partial"
    AITKEN = "aitken"
    EULER = "euler-transform"


@dataclass(frozen=True)
class EvalConfig:
    tolerance: float = 1e-10
    max_terms: int = 10**6
    derivative_order_cap: int = 4

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidArgumentError("tolerance must be positive")
        if self.max_terms < 4:
            raise InvalidArgumentError("max_terms must be at least 4")
        if self.derivative_order_cap < 1:
            raise InvalidArgumentError("derivative_order_cap must be positive")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class EtaEvaluation:
    value: complex
    method: Method
    terms_used: int
    error_estimate: float

    @property
    def x(self) -> float:
        return self.value.real

    @property
    def y(self) -> float:
        return self.value.imag


def format_real(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(float(x), ".17g")


# --- term functions -------------------------------------------------------

def _power_terms(s: np.ndarray, order: int = 0):
    """Terms ``(-log n)**order * n**-s`` for the points ``s``."""

    def term_fn(idx, n):
        log_n = np.log(n)
        terms = np.exp(-np.outer(s[idx], log_n))
        if order:
            terms = terms * (-log_n) ** order
        return terms

    return term_fn


def _accelerate(term_builder, decay: np.ndarray, freq: np.ndarray, config: EvalConfig, method, lockstep: bool):
    """Sum alternating series point by point.

    ``term_builder(sel)`` returns the term function for the points ``sel``;
    ``decay`` is the real exponent of each series (the Euler transform is used
    where it is zero) and ``freq`` the oscillation rate in ``log n``.
    Returns values, per-point method names, terms used and estimates.
    """
    n_pts = decay.size
    if method is None:
        use_euler = decay == 0.0
    else:
        use_euler = np.full(n_pts, Method(method) is Method.EULER)
    values = np.empty(n_pts, dtype=complex)
    terms = np.zeros(n_pts, dtype=np.int64)
    estimates = np.empty(n_pts)
    converged = np.zeros(n_pts, dtype=bool)
    for euler_flag in (False, True):
        sel = np.flatnonzero(use_euler == euler_flag)
        if not sel.size:
            continue
        term_fn = term_builder(sel)
        if euler_flag:
            res = summation.euler_sum(term_fn, freq[sel], config.tolerance, config.max_terms, lockstep)
        else:
            res = summation.aitken_sum(term_fn, sel.size, config.tolerance, config.max_terms, lockstep)
        values[sel] = res.values
        terms[sel] = res.terms_used
        estimates[sel] = res.estimates
        converged[sel] = res.converged
    if not converged.all():
        bad = int(np.flatnonzero(~converged)[0])
        raise NonConvergenceError(
            f"tolerance {config.tolerance:g} not reached within {config.max_terms} terms "
            f"(point {bad}, exponent {decay[bad]:g}, frequency {freq[bad]:g})",
            best_value=complex(values[bad]),
            error_estimate=float(estimates[bad]),
            terms_used=int(terms[bad]),
        )
    methods = np.where(use_euler, Method.EULER.value, Method.AITKEN.value)
    return values, methods, terms, estimates


def _sum_power_series(s: np.ndarray, config: EvalConfig, order: int, method, lockstep: bool):
    """``sum (-1)**(n-1) (-log n)**order n**-s`` for every entry of ``s``."""
    s = np.asarray(s, dtype=complex)
    return _accelerate(lambda sel: _power_terms(s[sel], order), s.real, s.imag, config, method, lockstep)


def _cos_sin_terms(exponent: np.ndarray, t: np.ndarray, sin_sign: float):
    def term_fn(idx, n):
        log_n = np.log(n)
        phase = np.outer(t[idx], log_n)
        mod = np.exp(-np.outer(exponent[idx], log_n))
        return mod * np.cos(phase) + 1j * (sin_sign * mod * np.sin(phase))

    return term_fn


def coordinate_series(sigma, t, reflected: bool = False, config: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Sum the real coordinate series directly, with real cosines and sines.

    ``reflected=False`` gives ``x_P + i y_P``::

        x_P = sum (-1)**(n-1) n**-sigma cos(t log n),  y_P = -sum ... sin(t log n)

    ``reflected=True`` gives ``x_Q + i y_Q`` with ``n**-(1-sigma)`` and ``+sin``.
    This path never forms ``n**-s`` as a complex power, so comparing it with
    :func:`eta` is a genuine two-route check.
    """
    sigma, t = np.broadcast_arrays(np.asarray(sigma, dtype=float), np.asarray(t, dtype=float))
    shape = sigma.shape
    sigma = sigma.ravel()
    t = t.ravel()
    exponent = 1.0 - sigma if reflected else sigma
    if (exponent < 0).any():
        raise DomainError("coordinate series need a non-negative exponent")
    sin_sign = 1.0 if reflected else -1.0
    values, _, _, _ = _accelerate(
        lambda sel: _cos_sin_terms(exponent[sel], t[sel], sin_sign), exponent, t, config, None, False
    )
    return values.reshape(shape)


def difference_series(alpha1, alpha2, t, config: EvalConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``sum (-1)**(n-1) (n**-alpha1 - n**-alpha2) (cos(t log n) - i sin(t log n))``.

    Real part is the cosine sum, minus the imaginary part the sine sum.
    The series decays like ``n**-min(alpha1, alpha2)``.
    """
    a1, a2, t = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (alpha1, alpha2, t)))
    shape = a1.shape
    a1, a2, t = a1.ravel(), a2.ravel(), t.ravel()

    def builder(sel):
        def term_fn(idx, n):
            log_n = np.log(n)
            phase = np.outer(t[sel][idx], log_n)
            mod = np.exp(-np.outer(a1[sel][idx], log_n)) - np.exp(-np.outer(a2[sel][idx], log_n))
            return mod * np.cos(phase) - 1j * (mod * np.sin(phase))

        return term_fn

    values, _, _, _ = _accelerate(builder, np.minimum(a1, a2), t, config, None, False)
    return values.reshape(shape)


# --- public operations ----------------------------------------------------

def eta_partial_sum(s: PointLike, n_terms: int) -> complex:
    """Raw truncation ``sum_{n=1}^{n_terms} (-1)**(n-1) n**-s``."""
    if int(n_terms) != n_terms or n_terms < 1:
        raise InvalidArgumentError(f"n_terms must be a positive integer, got {n_terms!r}")
    z = as_complex(s)
    total = 0j
    chunk = 1 << 16
    for start in range(1, int(n_terms) + 1, chunk):
        n = np.arange(start, min(start + chunk, int(n_terms) + 1), dtype=float)
        total += np.sum(np.exp(-z * np.log(n)) * np.where(n % 2 == 1, 1.0, -1.0))
    return complex(total)


def _raw_eta(z: complex, config: EvalConfig) -> EtaEvaluation:
    # rigorous stopping rule only for real z: the first omitted term bounds the tail
    if z.real <= 0:
        raise DomainError("raw partial sums need sigma > 0")
    needed = math.ceil(config.tolerance ** (-1.0 / z.real)) - 1
    n_terms = max(1, needed)
    if n_terms > config.max_terms:
        best = eta_partial_sum(z, config.max_terms)
        raise NonConvergenceError(
            f"raw partial sum needs {needed} terms, more than max_terms={config.max_terms}",
            best_value=best,
            error_estimate=(config.max_terms + 1) ** -z.real,
            terms_used=config.max_terms,
        )
    value = eta_partial_sum(z, n_terms)
    return EtaEvaluation(value, Method.RAW, n_terms, (n_terms + 1) ** -z.real)


def eta(s: PointLike, config: EvalConfig = DEFAULT_CONFIG, method: Method | str | None = None) -> EtaEvaluation:
    """Evaluate ``eta(s)`` for ``sigma >= 0``.

    By default Aitken acceleration is used for ``sigma > 0`` and the Euler
    transform on ``sigma = 0``; ``method`` forces a scheme.
    """
    z = as_complex(s)
    if z.real < 0:
        raise DomainError(f"eta is evaluated only for sigma >= 0, got sigma = {z.real}")
    if method is not None and Method(method) is Method.RAW:
        return _raw_eta(z, config)
    if method is not None and Method(method) is Method.AITKEN and z.real == 0:
        raise DomainError("Aitken acceleration needs sigma > 0; use the Euler transform")
    values, methods, terms, est = _sum_power_series(np.array([z]), config, 0, method, False)
    return EtaEvaluation(complex(values[0]), Method(methods[0]), int(terms[0]), float(est[0]))


def eta_many(s, config: EvalConfig = DEFAULT_CONFIG, lockstep: bool = False) -> np.ndarray:
    """Vectorised :func:`eta` returning just the complex values.

    Each point goes through exactly the computation :func:`eta` would perform
    unless ``lockstep`` is set, in which case all points share one term count.
    """
    arr = np.asarray(s, dtype=complex)
    if arr.size and (arr.real < 0).any():
        raise DomainError("eta is evaluated only for sigma >= 0")
    if not np.isfinite(arr).all():
        raise InvalidArgumentError("non-finite evaluation point")
    values, _, _, _ = _sum_power_series(arr.ravel(), config, 0, None, lockstep)
    return values.reshape(arr.shape)


def eta_reflected(s: PointLike, config: EvalConfig = DEFAULT_CONFIG) -> EtaEvaluation:
    """``eta(1 - s)`` for ``sigma <= 1``; components are ``x_Q`` and ``y_Q``."""
    z = as_complex(s)
    if z.real > 1:
        raise DomainError(f"eta(1 - s) needs sigma <= 1, got sigma = {z.real}")
    return eta(1.0 - z, config)


def eta_derivative(s: PointLike, config: EvalConfig = DEFAULT_CONFIG, order: int = 1) -> complex:
    """Term-wise derivative ``eta^(order)(s)``; for ``order = 1`` this is
    ``sum_{n>=2} (-1)**n log(n) n**-s = u - i v``."""
    return complex(eta_derivative_many(np.array([as_complex(s)]), config, order)[0])


def eta_derivative_many(s, config: EvalConfig = DEFAULT_CONFIG, order: int = 1, lockstep: bool = False) -> np.ndarray:
    arr = np.asarray(s, dtype=complex)
    if not 1 <= order <= config.derivative_order_cap:
        raise InvalidArgumentError(
            f"derivative order {order} outside 1..{config.derivative_order_cap}"
        )
    if arr.size and (arr.real <= 0).any():
        raise DomainError("eta_derivative needs sigma > 0")
    values, _, _, _ = _sum_power_series(arr.ravel(), config, order, Method.AITKEN, lockstep)
    return values.reshape(arr.shape)


def x_p(sigma: float, t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    return float(coordinate_series(sigma, t, False, config).real)


def y_p(sigma: float, t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    return float(coordinate_series(sigma, t, False, config).imag)


def x_q(sigma: float, t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    return float(coordinate_series(sigma, t, True, config).real)


def y_q(sigma: float, t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    return float(coordinate_series(sigma, t, True, config).imag)


def functional_equation_sides(s: PointLike, config: EvalConfig = DEFAULT_CONFIG) -> tuple[complex, complex]:
    """Both sides of the eta reflection identity

        pi**(-s/2) (1 - 2**s) Gamma(s/2) eta(s)
            = pi**(-(1-s)/2) (1 - 2**(1-s)) Gamma((1-s)/2) eta(1-s)
    """
    z = as_complex(s)
    if not 0.0 < z.real < 1.0:
        raise DomainError(f"functional equation is checked on 0 < sigma < 1, got {z.real}")
    w = 1.0 - z
    log_pi = math.log(math.pi)
    left = cmath.exp(-0.5 * z * log_pi + log_gamma(0.5 * z)) * (1.0 - 2.0 ** z) * eta(z, config).value
    right = cmath.exp(-0.5 * w * log_pi + log_gamma(0.5 * w)) * (1.0 - 2.0 ** w) * eta(w, config).value
    return left, right


def functional_equation_residual(s: PointLike, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """``|LHS - RHS| / (|LHS| + |RHS| + 1)`` for the reflection identity."""
    left, right = functional_equation_sides(s, config)
    return abs(left - right) / (abs(left) + abs(right) + 1.0)


def zeta_from_eta(s: PointLike, config: EvalConfig = DEFAULT_CONFIG) -> complex:
    """``zeta(s) = eta(s) / (1 - 2**(1-s))`` for ``sigma > 0``."""
    z = as_complex(s)
    if z.real <= 0:
        raise DomainError(f"zeta_from_eta needs sigma > 0, got {z.real}")
    if z.real == 1.0:
        k = z.imag * math.log(2.0) / (2.0 * math.pi)
        if abs(k - round(k)) < 1e-12:
            raise SingularPointError(
                f"1 - 2**(1-s) vanishes at s = {z!r} (k = {round(k)})"
            )
    factor = 1.0 - 2.0 ** (1.0 - z)
    if factor == 0:
        raise SingularPointError(f"1 - 2**(1-s) vanishes at s = {z!r}")
    return eta(z, config).value / factor
