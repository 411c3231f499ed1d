"""Images of the sigma = const and t = const lines under eta, and their geometry.

A :class:`CurveTrace` is a sampled polyline in the x-y plane.  Step regions
are bounded by two t = const traces which must be simple and disjoint; the
segment tests here are a plain O(n^2) sweep over segment pairs with
orientation predicates, vectorised in row blocks.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import (
    EvaluationError,
    InvalidArgumentError,
    NonConvergenceError,
    PartitionError,
)
from .eta import DEFAULT_CONFIG, EvalConfig, eta_derivative_many, eta_many, format_real

SIGMA_CONST = "sigma-const"
T_CONST = "t-const"
SOURCE_ETA = "eta"
SOURCE_REFLECTED = "eta-reflected"

DEFAULT_REGION_STEP = 0.25
DEFAULT_DEGENERACY_THRESHOLD = 0.05
DEFAULT_FD_STEP = 1e-5
COLLISION_TOL = 1e-9


@dataclass(frozen=True)
class CurveTrace:
    family: str
    fixed_value: float
    params: np.ndarray
    x: np.ndarray
    y: np.ndarray
    source: str = SOURCE_ETA

    def __post_init__(self):
        if self.family not in (SIGMA_CONST, T_CONST):
            raise InvalidArgumentError(f"unknown curve family {self.family!r}")
        if self.source not in (SOURCE_ETA, SOURCE_REFLECTED):
            raise InvalidArgumentError(f"unknown source {self.source!r}")
        params = np.asarray(self.params, dtype=float)
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if not (params.shape == x.shape == y.shape) or params.ndim != 1:
            raise InvalidArgumentError("params, x and y must be 1-d arrays of equal length")
        if params.size < 2:
            raise InvalidArgumentError("a trace needs at least two samples")
        if not (np.isfinite(params).all() and np.isfinite(x).all() and np.isfinite(y).all()):
            raise InvalidArgumentError("trace samples must be finite")
        if not (np.diff(params) > 0).all():
            raise InvalidArgumentError("trace parameters must be strictly increasing")
        if self.family == SIGMA_CONST and not 0.0 <= self.fixed_value <= 1.0:
            raise InvalidArgumentError("sigma-const traces need fixed_value in [0, 1]")
        if self.family == T_CONST and (params[0] < 0.0 or params[-1] > 1.0):
            raise InvalidArgumentError("t-const traces are parametrised by sigma in [0, 1]")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __len__(self):
        return self.params.size

    @property
    def trace_id(self) -> str:
        return f"{self.family}:{self.fixed_value:g}:{self.source}"

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.x, self.y])

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.params.tolist(), self.x.tolist(), self.y.tolist()))

    def to_csv(self, path=None) -> str:
        """Write ``param,x,y`` rows with 17 significant digits; returns the text."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["param", "x", "y"])
        for p, xv, yv in zip(self.params, self.x, self.y):
            writer.writerow([format_real(p), format_real(xv), format_real(yv)])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")
        return text

    @classmethod
    def from_csv(cls, path, family: str, fixed_value: float, source: str = SOURCE_ETA) -> "CurveTrace":
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != ["param", "x", "y"]:
                raise InvalidArgumentError(f"{path}: expected header param,x,y, got {header}")
            rows = [[float(v) for v in row] for row in reader if row]
        data = np.array(rows, dtype=float).reshape(-1, 3)
        return cls(family, fixed_value, data[:, 0], data[:, 1], data[:, 2], source)


def _evaluate(s: np.ndarray, params: np.ndarray, config: EvalConfig) -> np.ndarray:
    try:
        return eta_many(s, config)
    except NonConvergenceError:
        for p, point in zip(params, s):
            try:
                eta_many(np.array([point]), config)
            except NonConvergenceError as exc:
                raise EvaluationError(f"evaluation failed at param {p!r}: {exc}", float(p)) from exc
        raise


def _points_for(sigma: np.ndarray, t: np.ndarray, source: str) -> np.ndarray:
    s = sigma + 1j * t
    if source == SOURCE_REFLECTED:
        return 1.0 - s
    return s


def trace_sigma_curve(
    alpha: float,
    t_lo: float,
    t_hi: float,
    n_samples: int,
    source: str = SOURCE_ETA,
    config: EvalConfig = DEFAULT_CONFIG,
) -> CurveTrace:
    """Sample the image of ``sigma = alpha`` for ``t`` uniformly in ``[t_lo, t_hi]``."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"alpha must lie in [0, 1], got {alpha}")
    if not t_lo < t_hi:
        raise InvalidArgumentError(f"need t_lo < t_hi, got [{t_lo}, {t_hi}]")
    if n_samples < 2:
        raise InvalidArgumentError("n_samples must be at least 2")
    t = np.linspace(t_lo, t_hi, int(n_samples))
    values = _evaluate(_points_for(np.full_like(t, alpha), t, source), t, config)
    return CurveTrace(SIGMA_CONST, float(alpha), t, values.real, values.imag, source)


def trace_t_curve(
    beta: float,
    n_samples: int,
    source: str = SOURCE_ETA,
    config: EvalConfig = DEFAULT_CONFIG,
) -> CurveTrace:
    """Sample the image of ``t = beta`` for ``sigma`` uniformly in ``[0, 1]``."""
    if n_samples < 2:
        raise InvalidArgumentError("n_samples must be at least 2")
    sigma = np.linspace(0.0, 1.0, int(n_samples))
    values = _evaluate(_points_for(sigma, np.full_like(sigma, beta), source), sigma, config)
    return CurveTrace(T_CONST, float(beta), sigma, values.real, values.imag, source)


# --- orthogonality --------------------------------------------------------

@dataclass(frozen=True)
class OrthogonalityDiagnostic:
    alpha: float
    beta: float
    slope_sigma_curve: float
    slope_t_curve: float
    product_residual: float
    derivative_modulus: float
    u: float
    v: float
    degenerate: bool

    @property
    def slope_sigma_analytic(self) -> float:
        return self.u / self.v if self.v else math.copysign(math.inf, self.u)

    @property
    def slope_t_analytic(self) -> float:
        return -self.v / self.u if self.u else math.copysign(math.inf, -self.v)


def _safe_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(den != 0, num / np.where(den != 0, den, 1.0), np.copysign(np.inf, num))


def orthogonality_lattice(
    alphas: Sequence[float],
    betas: Sequence[float],
    config: EvalConfig = DEFAULT_CONFIG,
    degeneracy_threshold: float = DEFAULT_DEGENERACY_THRESHOLD,
    step: float = DEFAULT_FD_STEP,
    component_floor: float = 1e-6,
) -> list[OrthogonalityDiagnostic]:
    """Orthogonality diagnostics at every ``(alpha, beta)`` of the product lattice.

    Slopes are measured on the traced curves with central differences of
    step ``step`` (one-sided at sigma = 0 or 1), independent of the
    derivative series, which supplies ``u`` and ``v`` for the degeneracy test.
    """
    a, b = np.meshgrid(np.asarray(alphas, float), np.asarray(betas, float), indexing="ij")
    a = a.ravel()
    b = b.ravel()
    if ((a < 0) | (a > 1)).any():
        raise InvalidArgumentError("alpha must lie in [0, 1]")
    a_lo = np.maximum(a - step, 0.0)
    a_hi = np.minimum(a + step, 1.0)
    stencil = np.concatenate([
        a + 1j * (b - step),
        a + 1j * (b + step),
        a_lo + 1j * b,
        a_hi + 1j * b,
    ])
    values = eta_many(stencil, config, lockstep=True).reshape(4, -1)
    dt = values[1] - values[0]
    ds = values[3] - values[2]
    slope_sigma = _safe_ratio(dt.imag, dt.real)
    slope_t = _safe_ratio(ds.imag, ds.real)

    # u and v need sigma > 0; nudge the sigma = 0 column inside for the test only
    deriv = eta_derivative_many(np.maximum(a, step) + 1j * b, config)
    u = deriv.real
    v = -deriv.imag
    modulus = np.abs(deriv)
    with np.errstate(invalid="ignore", over="ignore"):
        residual = np.abs(slope_sigma * slope_t + 1.0)
    degenerate = (
        (modulus < degeneracy_threshold)
        | (np.abs(u) < component_floor)
        | (np.abs(v) < component_floor)
        | (dt.real == 0)
        | (ds.real == 0)
    )
    out = []
    for k in range(a.size):
        out.append(OrthogonalityDiagnostic(
            alpha=float(a[k]),
            beta=float(b[k]),
            slope_sigma_curve=float(slope_sigma[k]),
            slope_t_curve=float(slope_t[k]),
            product_residual=float(residual[k]) if math.isfinite(residual[k]) else math.nan,
            derivative_modulus=float(modulus[k]),
            u=float(u[k]),
            v=float(v[k]),
            degenerate=bool(degenerate[k]),
        ))
    return out


def orthogonality_at(
    alpha: float,
    beta: float,
    config: EvalConfig = DEFAULT_CONFIG,
    degeneracy_threshold: float = DEFAULT_DEGENERACY_THRESHOLD,
    step: float = DEFAULT_FD_STEP,
) -> OrthogonalityDiagnostic:
    return orthogonality_lattice([alpha], [beta], config, degeneracy_threshold, step)[0]


# --- segment intersection -------------------------------------------------

# Forward error bound of the floating-point orientation determinant relative to
# the sum of the magnitudes of its two products (Shewchuk's ccwerrboundA).
_ORIENT_ERRBOUND = (3.0 + 16.0 * np.finfo(float).eps) * np.finfo(float).eps


_SPLITTER = 134217729.0  # 2**27 + 1, Dekker's splitting constant


def _diff_is_exact(a, b, d):
    """True where the rounded difference ``d = a - b`` has no rounding error."""
    b_virtual = a - d
    a_virtual = d + b_virtual
    return (a - a_virtual) + (b_virtual - b) == 0


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _product_is_exact(a, b, p):
    """True where the rounded product ``p = a * b`` has no rounding error."""
    a_hi, a_lo = _split(a)
    b_hi, b_lo = _split(b)
    err = a_lo * b_lo - (((p - a_hi * b_hi) - a_lo * b_hi) - a_hi * b_lo)
    return err == 0


def _exact_orient(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(float(v)) for v in (ax, ay, bx, by, cx, cy))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def _orient(ax, ay, bx, by, cx, cy):
    """Sign (-1, 0, +1) of the orientation of ``c`` relative to the line ``a -> b``.

    The floating-point determinant decides whenever it clears its forward error
    bound, or when every intermediate difference and product was exact (the
    sign of a rounded subtraction is then exact too).  The few remaining nearly
    collinear cases are settled in rational arithmetic, so the predicate is
    consistent under any reordering of the points.
    """
    ax, ay, bx, by, cx, cy = np.broadcast_arrays(ax, ay, bx, by, cx, cy)
    ux, uy, wx, wy = bx - ax, by - ay, cx - ax, cy - ay
    left = ux * wy
    right = uy * wx
    det = left - right
    sign = np.array(np.sign(det))
    uncertain = np.abs(det) <= _ORIENT_ERRBOUND * (np.abs(left) + np.abs(right))
    if uncertain.any():
        with np.errstate(over="ignore", invalid="ignore"):
            exact = (
                _diff_is_exact(bx, ax, ux) & _diff_is_exact(by, ay, uy)
                & _diff_is_exact(cx, ax, wx) & _diff_is_exact(cy, ay, wy)
                & _product_is_exact(ux, wy, left) & _product_is_exact(uy, wx, right)
            )
        uncertain &= ~exact
        for k in map(tuple, np.argwhere(uncertain)):
            sign[k] = _exact_orient(ax[k], ay[k], bx[k], by[k], cx[k], cy[k])
    return sign


def _point_segment_distance(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    length2 = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        u = np.where(length2 > 0, ((px - ax) * dx + (py - ay) * dy) / np.where(length2 > 0, length2, 1.0), 0.0)
    u = np.clip(u, 0.0, 1.0)
    return np.hypot(px - (ax + u * dx), py - (ay + u * dy))


def _on_segment(px, py, ax, ay, bx, by):
    return (
        (np.minimum(ax, bx) <= px) & (px <= np.maximum(ax, bx))
        & (np.minimum(ay, by) <= py) & (py <= np.maximum(ay, by))
    )


def segments_touch(p1: np.ndarray, p2: np.ndarray, q1: np.ndarray, q2: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Boolean matrix: does segment ``p1[i]p2[i]`` come within ``tol`` of ``q1[j]q2[j]``?

    Inputs are ``(A, 2)`` and ``(B, 2)`` arrays; the result has shape ``(A, B)``.
    """
    ax, ay = p1[:, 0:1], p1[:, 1:2]
    bx, by = p2[:, 0:1], p2[:, 1:2]
    cx, cy = q1[None, :, 0], q1[None, :, 1]
    dx, dy = q2[None, :, 0], q2[None, :, 1]

    # bounding-box rejection, inflated by tol
    hit = (
        (np.minimum(ax, bx) - tol <= np.maximum(cx, dx))
        & (np.minimum(cx, dx) - tol <= np.maximum(ax, bx))
        & (np.minimum(ay, by) - tol <= np.maximum(cy, dy))
        & (np.minimum(cy, dy) - tol <= np.maximum(ay, by))
    )
    if not hit.any():
        return hit
    d1 = _orient(cx, cy, dx, dy, ax, ay)
    d2 = _orient(cx, cy, dx, dy, bx, by)
    d3 = _orient(ax, ay, bx, by, cx, cy)
    d4 = _orient(ax, ay, bx, by, dx, dy)
    proper = (d1 * d2 < 0) & (d3 * d4 < 0)
    collinear_touch = (
        ((d1 == 0) & _on_segment(ax, ay, cx, cy, dx, dy))
        | ((d2 == 0) & _on_segment(bx, by, cx, cy, dx, dy))
        | ((d3 == 0) & _on_segment(cx, cy, ax, ay, bx, by))
        | ((d4 == 0) & _on_segment(dx, dy, ax, ay, bx, by))
    )
    result = proper | collinear_touch
    if tol > 0:
        dist = np.minimum.reduce([
            _point_segment_distance(ax, ay, cx, cy, dx, dy),
            _point_segment_distance(bx, by, cx, cy, dx, dy),
            _point_segment_distance(cx, cy, ax, ay, bx, by),
            _point_segment_distance(dx, dy, ax, ay, bx, by),
        ])
        result |= dist <= tol
    return result & hit


_BLOCK = 256


def _polyline_points(trace) -> np.ndarray:
    if isinstance(trace, CurveTrace):
        return trace.points
    return np.asarray(trace, dtype=float)


def polyline_self_intersects(trace, tol: float = 0.0) -> bool:
    """True iff two non-adjacent segments of the polyline touch within ``tol``."""
    pts = _polyline_points(trace)
    start, end = pts[:-1], pts[1:]
    n_seg = start.shape[0]
    for i0 in range(0, n_seg, _BLOCK):
        i1 = min(i0 + _BLOCK, n_seg)
        touch = segments_touch(start[i0:i1], end[i0:i1], start, end, tol)
        rows = np.arange(i0, i1)[:, None]
        cols = np.arange(n_seg)[None, :]
        if (touch & (cols >= rows + 2)).any():
            return True
    return False


def polylines_intersect(a, b, tol: float = 0.0) -> bool:
    """True iff some segment of ``a`` touches some segment of ``b`` within ``tol``."""
    pa = _polyline_points(a)
    pb = _polyline_points(b)
    for i0 in range(0, pa.shape[0] - 1, _BLOCK):
        i1 = min(i0 + _BLOCK, pa.shape[0] - 1)
        if segments_touch(pa[i0:i1], pa[i0 + 1:i1 + 1], pb[:-1], pb[1:], tol).any():
            return True
    return False


# --- step regions ---------------------------------------------------------

@dataclass(frozen=True)
class StepRegion:
    index_m: int
    t_lo: float
    t_hi: float
    lower_boundary: CurveTrace
    upper_boundary: CurveTrace

    def __post_init__(self):
        if self.index_m < 1:
            raise InvalidArgumentError("region index must be positive")
        if not self.t_lo < self.t_hi:
            raise InvalidArgumentError(f"region needs t_lo < t_hi, got [{self.t_lo}, {self.t_hi}]")
        for name, trace, beta in (("lower", self.lower_boundary, self.t_lo), ("upper", self.upper_boundary, self.t_hi)):
            if trace.family != T_CONST or trace.fixed_value != beta:
                raise InvalidArgumentError(f"{name} boundary must be the t = {beta} trace")

    def boundary_problems(self, tol: float = 0.0) -> list[str]:
        problems = []
        if polyline_self_intersects(self.lower_boundary, tol):
            problems.append(f"t = {self.t_lo:g} boundary self-intersects")
        if polyline_self_intersects(self.upper_boundary, tol):
            problems.append(f"t = {self.t_hi:g} boundary self-intersects")
        if polylines_intersect(self.lower_boundary, self.upper_boundary, tol):
            problems.append(f"t = {self.t_lo:g} and t = {self.t_hi:g} boundaries intersect")
        return problems

    def is_valid(self, tol: float = 0.0) -> bool:
        return not self.boundary_problems(tol)

    def to_json(self, directory, stem: str | None = None) -> Path:
        """Write ``<stem>.json`` plus the two boundary CSV files into ``directory``."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        stem = stem or f"region{self.index_m}"
        lower_name = f"{stem}_lower.csv"
        upper_name = f"{stem}_upper.csv"
        self.lower_boundary.to_csv(directory / lower_name)
        self.upper_boundary.to_csv(directory / upper_name)
        doc = {
            "m": self.index_m,
            "t_lo": self.t_lo,
            "t_hi": self.t_hi,
            "lower_boundary": lower_name,
            "upper_boundary": upper_name,
        }
        path = directory / f"{stem}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
        return path

    @classmethod
    def from_json(cls, path) -> "StepRegion":
        path = Path(path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        lower = CurveTrace.from_csv(path.parent / doc["lower_boundary"], T_CONST, float(doc["t_lo"]))
        upper = CurveTrace.from_csv(path.parent / doc["upper_boundary"], T_CONST, float(doc["t_hi"]))
        return cls(int(doc["m"]), float(doc["t_lo"]), float(doc["t_hi"]), lower, upper)


@dataclass(frozen=True)
class RegionCheck:
    index_m: int
    t_lo: float
    t_hi: float
    problems: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.problems


class _TraceCache:
    def __init__(self, n_samples: int, config: EvalConfig):
        self.n_samples = n_samples
        self.config = config
        self._traces: dict[float, CurveTrace] = {}
        self._simple: dict[float, bool] = {}

    def trace(self, beta: float) -> CurveTrace:
        if beta not in self._traces:
            self._traces[beta] = trace_t_curve(beta, self.n_samples, config=self.config)
        return self._traces[beta]

    def simple(self, beta: float, tol: float) -> bool:
        if beta not in self._simple:
            self._simple[beta] = not polyline_self_intersects(self.trace(beta), tol)
        return self._simple[beta]


def check_partition(
    boundaries: Sequence[float],
    n_samples: int = 200,
    config: EvalConfig = DEFAULT_CONFIG,
    tol: float = 0.0,
) -> list[RegionCheck]:
    """Check every consecutive pair of a proposed boundary list."""
    bounds = [float(b) for b in boundaries]
    if len(bounds) < 2:
        raise InvalidArgumentError("a partition needs at least two boundaries")
    if any(hi <= lo for lo, hi in zip(bounds, bounds[1:])):
        raise InvalidArgumentError("partition boundaries must be strictly increasing")
    cache = _TraceCache(n_samples, config)
    checks = []
    for m, (lo, hi) in enumerate(zip(bounds, bounds[1:]), start=1):
        region = StepRegion(m, lo, hi, cache.trace(lo), cache.trace(hi))
        checks.append(RegionCheck(m, lo, hi, tuple(region.boundary_problems(tol))))
    return checks


def validate_partition(
    boundaries: Sequence[float],
    n_samples: int = 200,
    config: EvalConfig = DEFAULT_CONFIG,
    tol: float = 0.0,
) -> list[StepRegion]:
    """Build the regions of a given partition, raising if any is invalid."""
    cache = _TraceCache(n_samples, config)
    regions = []
    for check in check_partition(boundaries, n_samples, config, tol):
        if not check.valid:
            raise PartitionError(f"region {check.index_m} [{check.t_lo:g}, {check.t_hi:g}]: " + "; ".join(check.problems))
        regions.append(StepRegion(check.index_m, check.t_lo, check.t_hi, cache.trace(check.t_lo), cache.trace(check.t_hi)))
    return regions


def build_regions(
    t_start: float,
    t_max: float,
    step: float = DEFAULT_REGION_STEP,
    n_samples: int = 200,
    config: EvalConfig = DEFAULT_CONFIG,
    tol: float = 0.0,
) -> list[StepRegion]:
    """Greedy partition of ``[t_start, t_max]`` on the lattice ``t_start + k * step``.

    From each boundary the next one is pushed forward one lattice step at a
    time for as long as the new t-curve stays simple and clear of the
    current lower boundary; the last admissible lattice point is taken.
    """
    if t_start < 0:
        raise InvalidArgumentError("t_start must be non-negative")
    if not t_start < t_max:
        raise InvalidArgumentError(f"need t_start < t_max, got [{t_start}, {t_max}]")
    if not step > 0:
        raise InvalidArgumentError("step must be positive")
    cache = _TraceCache(n_samples, config)
    n_steps = int(math.floor((t_max - t_start) / step + 1e-9))
    lattice = [round(t_start + k * step, 12) for k in range(n_steps + 1)]
    if not cache.simple(lattice[0], tol):
        raise PartitionError(f"starting curve t = {t_start:g} self-intersects")

    regions: list[StepRegion] = []
    k_lo = 0
    while k_lo < n_steps:
        lower = cache.trace(lattice[k_lo])
        best = None
        for k in range(k_lo + 1, n_steps + 1):
            beta = lattice[k]
            if not cache.simple(beta, tol) or polylines_intersect(lower, cache.trace(beta), tol):
                break
            best = k
        if best is None:
            raise PartitionError(
                f"no valid boundary after t = {lattice[k_lo]:g} at step {step:g}; refine the step"
            )
        regions.append(StepRegion(len(regions) + 1, lattice[k_lo], lattice[best], lower, cache.trace(lattice[best])))
        k_lo = best
    return regions


# --- monotonicity and injectivity ----------------------------------------

@dataclass(frozen=True)
class MonotonicityReport:
    trace_id: str
    epsilon: float
    violations: tuple[int, ...]
    ratio_min: float
    ratio_mean: float
    ratio_max: float
    n_ratios: int

    @property
    def ok(self) -> bool:
        return not self.violations


def chord_ratios(trace) -> tuple[np.ndarray, np.ndarray]:
    """Chord lengths ``L_{n,n+1}`` and ``L_{n,n+2}`` for every admissible ``n``."""
    pts = _polyline_points(trace)
    near = np.hypot(*(pts[1:-1] - pts[:-2]).T)
    far = np.hypot(*(pts[2:] - pts[:-2]).T)
    return near, far


def monotonicity_check(trace: CurveTrace) -> MonotonicityReport:
    """Flag every sample ``n`` whose next neighbour is not strictly closer than the one after."""
    if len(trace) < 3:
        raise InvalidArgumentError("monotonicity needs at least three samples")
    near, far = chord_ratios(trace)
    violations = tuple(int(i) for i in np.flatnonzero(~(near < far)))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = far / near
    finite = ratio[np.isfinite(ratio)]
    return MonotonicityReport(
        trace_id=trace.trace_id,
        epsilon=1.0 / (len(trace) - 1),
        violations=violations,
        ratio_min=float(finite.min()) if finite.size else math.nan,
        ratio_mean=float(finite.mean()) if finite.size else math.nan,
        ratio_max=float(finite.max()) if finite.size else math.nan,
        n_ratios=int(ratio.size),
    )


@dataclass(frozen=True)
class InjectivityReport:
    grid_n: int
    min_image_separation: float
    colliding_pairs: tuple[tuple[tuple[float, float], tuple[float, float]], ...]

    @property
    def ok(self) -> bool:
        return not self.colliding_pairs


def injectivity_probe(
    region: StepRegion,
    grid_n: int,
    config: EvalConfig = DEFAULT_CONFIG,
    collision_tol: float = COLLISION_TOL,
) -> InjectivityReport:
    """Map a ``grid_n x grid_n`` lattice of the region's parameter rectangle and
    look for distinct lattice points with coinciding images."""
    if grid_n < 2:
        raise InvalidArgumentError("grid_n must be at least 2")
    sig = np.linspace(0.0, 1.0, grid_n)
    t = np.linspace(region.t_lo, region.t_hi, grid_n)
    ss, tt = np.meshgrid(sig, t, indexing="ij")
    values = eta_many((ss + 1j * tt).ravel(), config)
    pts = np.column_stack([values.real, values.imag])
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=2)
    pairs = sorted(tree.query_pairs(collision_tol))
    params = np.column_stack([ss.ravel(), tt.ravel()])
    colliding = tuple(
        ((float(params[i, 0]), float(params[i, 1])), (float(params[j, 0]), float(params[j, 1])))
        for i, j in pairs
    )
    return InjectivityReport(grid_n, float(dist[:, 1].min()), colliding)


def region_traces(
    region: StepRegion,
    n_samples: int,
    sigmas: Iterable[float] = (0.0, 0.25, 0.5, 0.75, 1.0),
    n_t_curves: int = 3,
    config: EvalConfig = DEFAULT_CONFIG,
) -> list[CurveTrace]:
    """sigma = const traces across the region and t = const traces at its
    boundaries and interior, all at ``n_samples``."""
    traces = [trace_sigma_curve(a, region.t_lo, region.t_hi, n_samples, config=config) for a in sigmas]
    for beta in np.linspace(region.t_lo, region.t_hi, n_t_curves):
        traces.append(trace_t_curve(float(beta), n_samples, config=config))
    return traces
