"""Zeros of eta in the strip: critical-line scanning and refinement, argument-principle
counts on rectangles, the sigma = 1 zeros of the factor ``1 - 2**(1-s)``, and a
JSON-lines zero catalog."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import (
    CatalogParseError,
    CatalogValidationError,
    ContourTooCloseError,
    InvalidArgumentError,
    RefinementError,
)
from .eta import DEFAULT_CONFIG, EvalConfig, eta, eta_derivative, eta_many

CRITICAL_LINE = "critical-line"
SIGMA1_FACTOR = "sigma1-factor"
NEWTON = "newton"
BISECTION_WINDING = "bisection-winding"
CLOSED_FORM = "closed-form"

KINDS = (CRITICAL_LINE, SIGMA1_FACTOR)
METHODS = (NEWTON, BISECTION_WINDING, CLOSED_FORM)

DEFAULT_SCAN_THRESHOLD = 0.1
DEFAULT_ACCEPTANCE_RESIDUAL = 1e-9
DEFAULT_DEPTH_CAP = 20
FACTOR_PERIOD = 2.0 * math.pi / math.log(2.0)
MIN_ZERO_SPACING = 1e-6
# Contour samples with |eta| below this multiple of the evaluation tolerance
# have no reliable phase, so the contour is declared too close to a zero.
PHASE_FLOOR_FACTOR = 10.0


@dataclass(frozen=True)
class ZeroRecord:
    sigma: float
    t: float
    residual: float
    kind: str
    method: str
    iterations: int = 0

    def problems(self, acceptance_residual: float = DEFAULT_ACCEPTANCE_RESIDUAL) -> list[str]:
        out = []
        if self.kind not in KINDS:
            out.append(f"unknown kind {self.kind!r}")
        if self.method not in METHODS:
            out.append(f"unknown method {self.method!r}")
        if self.kind == CRITICAL_LINE and self.sigma != 0.5:
            out.append(f"critical-line zero with sigma = {self.sigma}")
        if self.kind == SIGMA1_FACTOR:
            k = self.t / FACTOR_PERIOD
            if self.sigma != 1.0 or round(k) == 0 or abs(k - round(k)) > 1e-12:
                out.append(f"sigma1-factor zero at ({self.sigma}, {self.t}) is not 1 + 2 pi i k / log 2")
        if not (self.residual >= 0 and self.residual <= acceptance_residual):
            out.append(f"residual {self.residual} exceeds {acceptance_residual}")
        if self.iterations < 0:
            out.append("negative iteration count")
        return out


@dataclass(frozen=True)
class Rectangle:
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    def __post_init__(self):
        if not (self.sigma_lo < self.sigma_hi and self.t_lo < self.t_hi):
            raise InvalidArgumentError(f"degenerate rectangle {self}")
        if self.sigma_lo < 0:
            raise InvalidArgumentError("rectangle must lie in sigma >= 0")


@dataclass
class ZeroCatalog:
    records: list[ZeroRecord] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.records = sorted(self.records, key=lambda r: (r.t, r.sigma))

    def critical_line(self) -> list[ZeroRecord]:
        return [r for r in self.records if r.kind == CRITICAL_LINE]

    def problems(self) -> list[str]:
        acceptance = self.metadata.get("acceptance_residual", DEFAULT_ACCEPTANCE_RESIDUAL)
        out = []
        for k, rec in enumerate(self.records):
            out.extend(f"record {k}: {p}" for p in rec.problems(acceptance))
        line_t = [r.t for r in self.critical_line()]
        for a, b in zip(line_t, line_t[1:]):
            if b - a < MIN_ZERO_SPACING:
                out.append(f"critical-line zeros at t = {a} and {b} are closer than {MIN_ZERO_SPACING}")
        return out


# --- critical-line scan ---------------------------------------------------

def scan_critical_line(
    t_lo: float,
    t_hi: float,
    step: float,
    threshold: float = DEFAULT_SCAN_THRESHOLD,
    config: EvalConfig = DEFAULT_CONFIG,
) -> list[tuple[float, float]]:
    """Brackets ``(t_left, t_right)`` around sampled local minima of ``|eta(1/2 + i t)|``
    that fall below ``threshold``."""
    if not t_lo < t_hi:
        raise InvalidArgumentError(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if not step > 0:
        raise InvalidArgumentError("step must be positive")
    n = int(math.floor((t_hi - t_lo) / step + 1e-9)) + 1
    t = t_lo + step * np.arange(n)
    mod = np.abs(eta_many(0.5 + 1j * t, config))
    brackets = []
    for i in range(n):
        left = mod[i - 1] if i > 0 else math.inf
        right = mod[i + 1] if i < n - 1 else math.inf
        if mod[i] < threshold and mod[i] <= left and mod[i] < right:
            brackets.append((float(t[max(i - 1, 0)]), float(t[min(i + 1, n - 1)])))
    return brackets


def _line_modulus(t: float, config: EvalConfig) -> float:
    return abs(eta(complex(0.5, t), config).value)


def golden_minimum(f, lo: float, hi: float, xtol: float = 1e-11, max_iter: int = 200) -> tuple[float, float, int]:
    """Golden-section search for the minimum of a unimodal ``f`` on ``[lo, hi]``."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    it = 0
    while b - a > xtol and it < max_iter:
        it += 1
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x), it


def minimum_on_line(lo: float, hi: float, config: EvalConfig = DEFAULT_CONFIG, xtol: float = 1e-11) -> tuple[float, float]:
    """Derivative-free location of the minimum of ``|eta(1/2 + i t)|`` on a bracket.

    Used as the independent check on Newton refinement.
    """
    t, value, _ = golden_minimum(lambda x: _line_modulus(x, config), lo, hi, xtol)
    return t, value


def refine_zero_newton(
    t0: float,
    config: EvalConfig = DEFAULT_CONFIG,
    max_iter: int = 50,
    acceptance_residual: float = DEFAULT_ACCEPTANCE_RESIDUAL,
    bracket: tuple[float, float] | None = None,
) -> ZeroRecord:
    """Refine a critical-line zero near ``t0``.

    Newton's method on ``g(t) = eta(1/2 + i t)`` with ``g'(t) = i eta'(s)`` and
    update ``t -= Re(g / g')``, halving steps that increase ``|g|``.  If the
    iterate leaves the bracket (default ``t0 +- 0.5``) or stalls, golden-section
    minimisation of ``|g|`` on the bracket takes over.
    """
    lo, hi = bracket if bracket is not None else (t0 - 0.5, t0 + 0.5)
    if not lo <= t0 <= hi:
        raise InvalidArgumentError(f"t0 = {t0} outside bracket [{lo}, {hi}]")
    t = float(t0)
    g = eta(complex(0.5, t), config).value
    best_t, best_res = t, abs(g)
    for it in range(1, max_iter + 1):
        dg = 1j * eta_derivative(complex(0.5, t), config)
        if dg == 0:
            break
        delta = (g / dg).real
        damping = 1.0
        while True:
            cand = t - damping * delta
            if not lo <= cand <= hi:
                cand = None
                break
            g_new = eta(complex(0.5, cand), config).value
            if abs(g_new) < abs(g) or damping < 1e-3:
                break
            damping *= 0.5
        if cand is None:
            break
        t, g = cand, g_new
        if abs(g) < best_res:
            best_t, best_res = t, abs(g)
        if best_res < acceptance_residual and abs(damping * delta) < 1e-14 * max(1.0, abs(t)):
            return ZeroRecord(0.5, best_t, best_res, CRITICAL_LINE, NEWTON, it)
        if abs(damping * delta) == 0.0:
            break
    if best_res < acceptance_residual:
        return ZeroRecord(0.5, best_t, best_res, CRITICAL_LINE, NEWTON, max_iter)

    t_min, res_min, iters = golden_minimum(lambda x: _line_modulus(x, config), lo, hi)
    if res_min < acceptance_residual:
        return ZeroRecord(0.5, t_min, res_min, CRITICAL_LINE, BISECTION_WINDING, iters)
    if res_min < best_res:
        best_t, best_res = t_min, res_min
    raise RefinementError(
        f"no zero with residual < {acceptance_residual:g} near t0 = {t0} "
        f"(best |eta| = {best_res:.3g} at t = {best_t:.12g})",
        best_t=best_t,
        best_residual=best_res,
    )


def find_critical_line_zeros(
    t_lo: float,
    t_hi: float,
    step: float = 0.01,
    threshold: float = DEFAULT_SCAN_THRESHOLD,
    config: EvalConfig = DEFAULT_CONFIG,
    acceptance_residual: float = DEFAULT_ACCEPTANCE_RESIDUAL,
) -> list[ZeroRecord]:
    """Scan and refine; brackets that refine to the same zero are merged."""
    records: list[ZeroRecord] = []
    for lo, hi in scan_critical_line(t_lo, t_hi, step, threshold, config):
        mid = 0.5 * (lo + hi)
        rec = refine_zero_newton(mid, config, acceptance_residual=acceptance_residual, bracket=(lo - step, hi + step))
        if all(abs(rec.t - other.t) >= MIN_ZERO_SPACING for other in records):
            records.append(rec)
    return sorted(records, key=lambda r: r.t)


# --- argument principle ---------------------------------------------------

def _edges(rect: Rectangle) -> list[tuple[complex, complex]]:
    a = complex(rect.sigma_lo, rect.t_lo)
    b = complex(rect.sigma_hi, rect.t_lo)
    c = complex(rect.sigma_hi, rect.t_hi)
    d = complex(rect.sigma_lo, rect.t_hi)
    return [(a, b), (b, c), (c, d), (d, a)]


def winding_number(
    rect: Rectangle,
    initial_samples_per_edge: int = 64,
    config: EvalConfig = DEFAULT_CONFIG,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> int:
    """Number of zeros of eta inside ``rect`` (with multiplicity).

    The boundary is traversed counter-clockwise; any pair of consecutive
    samples whose phase differs by ``pi / 2`` or more is bisected, up to
    ``depth_cap`` times.  A sample whose modulus is within the evaluation
    error also aborts, since its phase carries no information.
    """
    if initial_samples_per_edge < 2:
        raise InvalidArgumentError("need at least two samples per edge")
    total = 0.0
    for start, end in _edges(rect):
        u = np.linspace(0.0, 1.0, int(initial_samples_per_edge) + 1)
        depth = np.zeros(u.size - 1, dtype=int)
        values = eta_many(start + u * (end - start), config)
        while True:
            if (np.abs(values) <= PHASE_FLOOR_FACTOR * config.tolerance).any():
                raise ContourTooCloseError(
                    f"|eta| is within the evaluation error on the contour edge {start} -> {end}; "
                    "its phase is undefined there"
                )
            steps = np.angle(values[1:] / values[:-1])
            coarse = np.abs(steps) >= math.pi / 2.0
            if not coarse.any():
                break
            if (depth[coarse] >= depth_cap).any():
                raise ContourTooCloseError(
                    f"phase step stays >= pi/2 after {depth_cap} bisections on edge {start} -> {end}"
                )
            idx = np.flatnonzero(coarse)
            mids = 0.5 * (u[idx] + u[idx + 1])
            mid_vals = eta_many(start + mids * (end - start), config)
            u = np.insert(u, idx + 1, mids)
            values = np.insert(values, idx + 1, mid_vals)
            new_depth = depth[idx] + 1
            depth[idx] = new_depth
            depth = np.insert(depth, idx + 1, new_depth)
        total += float(np.sum(steps))
    winding = total / (2.0 * math.pi)
    count = int(round(winding))
    if abs(winding - count) > 1e-6:
        raise ContourTooCloseError(f"winding {winding} is not close to an integer")
    return count


# --- sigma = 1 factor zeros -----------------------------------------------

def sigma1_factor_zeros(t_max: float, config: EvalConfig = DEFAULT_CONFIG) -> list[ZeroRecord]:
    """Zeros ``1 + 2 pi i k / log 2`` (k >= 1, t <= t_max) of ``1 - 2**(1-s)``,
    which eta inherits on sigma = 1."""
    if not t_max > 0:
        raise InvalidArgumentError("t_max must be positive")
    out = []
    k = 1
    while k * FACTOR_PERIOD <= t_max:
        t = k * FACTOR_PERIOD
        out.append(ZeroRecord(1.0, t, abs(eta(complex(1.0, t), config).value), SIGMA1_FACTOR, CLOSED_FORM, 0))
        k += 1
    return out


# --- persistence ----------------------------------------------------------

def _record_to_json(rec: ZeroRecord) -> str:
    return json.dumps(asdict(rec), sort_keys=False, allow_nan=False)


def catalog_to_text(catalog: ZeroCatalog) -> str:
    lines = [json.dumps({"metadata": catalog.metadata}, sort_keys=True, allow_nan=False)]
    lines.extend(_record_to_json(r) for r in catalog.records)
    return "\n".join(lines) + "\n"


def save_catalog(catalog: ZeroCatalog, destination) -> None:
    """One JSON object per line, metadata first; floats round-trip exactly."""
    problems = catalog.problems()
    if problems:
        raise CatalogValidationError("; ".join(problems))
    Path(destination).write_text(catalog_to_text(catalog), encoding="utf-8")


_RECORD_FIELDS = {
    "sigma": float,
    "t": float,
    "residual": float,
    "kind": str,
    "method": str,
    "iterations": int,
}


def _parse_record(obj, line_number: int) -> ZeroRecord:
    if not isinstance(obj, dict) or set(obj) != set(_RECORD_FIELDS):
        raise CatalogParseError(f"expected fields {sorted(_RECORD_FIELDS)}", line_number)
    kwargs = {}
    for name, typ in _RECORD_FIELDS.items():
        value = obj[name]
        if typ is float and isinstance(value, (int, float)) and not isinstance(value, bool):
            kwargs[name] = float(value)
        elif typ is int and isinstance(value, int) and not isinstance(value, bool):
            kwargs[name] = value
        elif typ is str and isinstance(value, str):
            kwargs[name] = value
        else:
            raise CatalogParseError(f"field {name!r} has wrong type", line_number)
    return ZeroRecord(**kwargs)


def parse_catalog(lines: Iterable[str]) -> ZeroCatalog:
    metadata: dict = {}
    records = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogParseError(f"invalid JSON ({exc.msg})", number) from exc
        if isinstance(obj, dict) and set(obj) == {"metadata"}:
            if records or metadata:
                raise CatalogParseError("metadata must be the first line", number)
            if not isinstance(obj["metadata"], dict):
                raise CatalogParseError("metadata must be an object", number)
            metadata = obj["metadata"]
            continue
        records.append(_parse_record(obj, number))
    if records != sorted(records, key=lambda r: (r.t, r.sigma)):
        raise CatalogValidationError("catalog records are not sorted by (t, sigma)")
    catalog = ZeroCatalog(records, metadata)
    problems = catalog.problems()
    if problems:
        raise CatalogValidationError("; ".join(problems))
    return catalog


def load_catalog(source) -> ZeroCatalog:
    with open(source, encoding="utf-8") as fh:
        return parse_catalog(fh)


def build_catalog(
    t_lo: float = 0.0,
    t_hi: float = 30.0,
    step: float = 0.01,
    threshold: float = DEFAULT_SCAN_THRESHOLD,
    config: EvalConfig = DEFAULT_CONFIG,
    acceptance_residual: float = DEFAULT_ACCEPTANCE_RESIDUAL,
    include_factor_zeros: bool = False,
    timestamp: str | None = None,
) -> ZeroCatalog:
    records = find_critical_line_zeros(t_lo, t_hi, step, threshold, config, acceptance_residual)
    if include_factor_zeros and t_hi > 0:
        records += [r for r in sigma1_factor_zeros(t_hi, config) if r.t >= t_lo]
    metadata = {
        "t_min": t_lo,
        "t_max": t_hi,
        "step": step,
        "threshold": threshold,
        "tolerance": config.tolerance,
        "max_terms": config.max_terms,
        "acceptance_residual": acceptance_residual,
    }
    if timestamp is not None:
        metadata["timestamp"] = timestamp
    return ZeroCatalog(records, metadata)
