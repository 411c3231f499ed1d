"""Numerical checks of the identities and geometric claims about eta in the strip.

Every check returns a :class:`PropertyReport`; :func:`run_all` runs the whole
battery in a fixed order and :func:`report_json` serialises the result
deterministically.  All checks are floating point on finite grids and ranges:
they are evidence, not proofs.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Sequence

import numpy as np

from . import geometry, zeros
from .errors import EtaLabError, InvalidArgumentError
from .eta import (
    DEFAULT_CONFIG,
    EvalConfig,
    coordinate_series,
    difference_series,
    eta,
    eta_many,
    functional_equation_residual,
    functional_equation_sides,
)

FINITE_EVIDENCE = "finite-range numerical evidence, not a proof"
REFERENCE_PARTITION = (0.0, 11.0, 15.0, 18.5, 21.0, 24.0, 26.0)
REFERENCE_ZERO_ANCHORS = (14.1, 21.0, 25.0)
FIGURE_INTERVALS = ((0.0, 11.0), (11.0, 15.0), (15.0, 18.5), (18.5, 21.0), (21.0, 24.0), (24.0, 26.0))
THREADS_ENV = "ETA_LAB_THREADS"


@dataclass(frozen=True)
class GridSpec:
    sigma_points: tuple[float, ...]
    t_points: tuple[float, ...]

    def __post_init__(self):
        sig = tuple(float(v) for v in self.sigma_points)
        t = tuple(float(v) for v in self.t_points)
        if not sig or not t:
            raise InvalidArgumentError("grid axes must be nonempty")
        if any(b <= a for a, b in zip(sig, sig[1:])) or any(b <= a for a, b in zip(t, t[1:])):
            raise InvalidArgumentError("grid axes must be strictly increasing")
        if sig[0] < 0 or sig[-1] > 1:
            raise InvalidArgumentError("sigma grid points must lie in [0, 1]")
        if t[0] < 0:
            raise InvalidArgumentError("t grid points must be non-negative")
        object.__setattr__(self, "sigma_points", sig)
        object.__setattr__(self, "t_points", t)

    @classmethod
    def uniform(cls, sigma_lo, sigma_hi, n_sigma, t_lo, t_hi, n_t) -> "GridSpec":
        return cls(tuple(np.linspace(sigma_lo, sigma_hi, n_sigma).tolist()),
                   tuple(np.linspace(t_lo, t_hi, n_t).tolist()))

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        s, t = np.meshgrid(np.array(self.sigma_points), np.array(self.t_points), indexing="ij")
        return s.ravel(), t.ravel()

    def to_dict(self) -> dict:
        return {"sigma_points": list(self.sigma_points), "t_points": list(self.t_points)}


@dataclass(frozen=True)
class PropertyReport:
    check_name: str
    grid: GridSpec | None
    max_residual: float
    worst_point: tuple[float, float] | None
    threshold: float
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)
    evidence: str | None = None

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "check_name": self.check_name,
            "passed": self.passed,
            "max_residual": _clean(self.max_residual),
            "threshold": self.threshold,
            "worst_point": None if self.worst_point is None else {
                "sigma": _clean(self.worst_point[0]), "t": _clean(self.worst_point[1])
            },
            "grid": None if self.grid is None else self.grid.to_dict(),
        }
        if self.evidence:
            doc["evidence"] = self.evidence
        if self.details:
            doc["details"] = _clean(self.details)
        return doc


def _clean(obj):
    """Make a value JSON-safe: non-finite floats become strings, numpy scalars plain."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        return value if math.isfinite(value) else repr(value)
    return obj


def _max_with_point(residuals: np.ndarray, sigma: np.ndarray, t: np.ndarray) -> tuple[float, tuple[float, float]]:
    k = int(np.argmax(residuals))
    return float(residuals[k]), (float(sigma[k]), float(t[k]))


def _gated(name, grid, residual, point, threshold, problems, details=None, evidence=None) -> PropertyReport:
    """Report whose residual is forced to infinity when a side condition fails.

    Keeps ``passed == (max_residual < threshold)`` for checks that also assert
    counts or bounds; the raw residual and the failed conditions go to ``details``.
    """
    details = dict(details or {})
    if problems:
        details["problems"] = list(problems)
        details["primary_residual"] = residual
        residual = math.inf
    return PropertyReport(name, grid, residual, point, threshold, residual < threshold, details, evidence)


def _report(name, grid, residuals, sigma, t, threshold, **extra) -> PropertyReport:
    worst, point = _max_with_point(np.asarray(residuals), np.asarray(sigma), np.asarray(t))
    return PropertyReport(name, grid, worst, point, threshold, worst < threshold, **extra)


# --- grid checks ----------------------------------------------------------

def check_symmetry(grid: GridSpec, config: EvalConfig = DEFAULT_CONFIG, threshold: float | None = None) -> PropertyReport:
    """``x_P(1-sigma, t) = x_Q(sigma, t)`` and ``y_P(1-sigma, t) = -y_Q(sigma, t)``.

    The P side is summed as complex powers ``n**-s``, the Q side from its real
    cosine and sine series, so the two routes share no arithmetic.
    """
    threshold = 4.0 * config.tolerance if threshold is None else threshold
    sigma, t = grid.mesh()
    p_side = eta_many((1.0 - sigma) + 1j * t, config)
    q_side = coordinate_series(sigma, t, reflected=True, config=config)
    residual = np.maximum(np.abs(p_side.real - q_side.real), np.abs(p_side.imag + q_side.imag))
    return _report("symmetry", grid, residual, sigma, t, threshold)


def _cr_residual(sigma: np.ndarray, t: np.ndarray, h: float, config: EvalConfig) -> np.ndarray:
    s = sigma + 1j * t
    vals = eta_many(np.concatenate([s + h, s - h, s + 1j * h, s - 1j * h]), config, lockstep=True).reshape(4, -1)
    d_sigma = (vals[0] - vals[1]) / (2.0 * h)
    d_t = (vals[2] - vals[3]) / (2.0 * h)
    # d_sigma = x_s + i y_s, d_t = x_t + i y_t
    return np.maximum(np.abs(d_sigma.real - d_t.imag), np.abs(d_t.real + d_sigma.imag))


CR_REFERENCE_STEP = 1e-4


def check_cauchy_riemann(grid: GridSpec, h: float = CR_REFERENCE_STEP, config: EvalConfig = DEFAULT_CONFIG,
                         safety: float = 4.0) -> PropertyReport:
    """Central-difference Cauchy-Riemann residuals, threshold ``C h^2``.

    ``C`` is ``safety`` times the constant observed at the reference step, so
    the check mainly guards against the residual failing to shrink as ``h^2``;
    the ratio between ``h`` and ``h / 2`` is reported in ``details``.
    """
    sigma, t = grid.mesh()
    if (sigma - h <= 0).any() or (sigma + h >= 1).any():
        raise InvalidArgumentError("Cauchy-Riemann grid must lie inside (h, 1 - h)")
    residual = _cr_residual(sigma, t, h, config)
    reference = residual if h == CR_REFERENCE_STEP else _cr_residual(sigma, t, CR_REFERENCE_STEP, config)
    constant = safety * float(reference.max()) / CR_REFERENCE_STEP**2
    threshold = constant * h * h
    halved = _cr_residual(sigma, t, h / 2.0, config)
    ratio = float(residual.max() / halved.max()) if halved.max() > 0 else math.inf
    return _report("cauchy_riemann", grid, residual, sigma, t, threshold,
                   details={"h": h, "calibrated_constant": constant, "halving_ratio": ratio})


def check_functional_equation(grid: GridSpec, config: EvalConfig = DEFAULT_CONFIG, threshold: float = 1e-8) -> PropertyReport:
    sigma, t = grid.mesh()
    if (sigma <= 0).any() or (sigma >= 1).any():
        raise InvalidArgumentError("functional-equation grid must lie in the open strip 0 < sigma < 1")
    residual = np.array([functional_equation_residual(complex(a, b), config) for a, b in zip(sigma, t)])
    return _report("functional_equation", grid, residual, sigma, t, threshold)


def branch_cut_lattice(n_alpha: int) -> tuple[np.ndarray, np.ndarray]:
    delta = 0.5 / n_alpha
    alpha1 = np.linspace(0.0, 0.5 - delta, n_alpha)
    alpha2 = np.linspace(0.5 + delta, 1.0, n_alpha)
    return alpha1, alpha2


def check_branch_cut_sums(t_star: float, n_alpha: int = 10, config: EvalConfig = DEFAULT_CONFIG,
                          witness_threshold: float = 1e-6, identity_threshold: float = 1e-9) -> PropertyReport:
    """Cosine and sine difference sums between sigma = alpha1 <= 1/2 and alpha2 >= 1/2.

    Passes when the identity against ``eta(alpha1 + i t*) - eta(alpha2 + i t*)``
    holds to ``identity_threshold`` and no lattice pair makes both sums vanish
    (minimum of ``max(|S_cos|, |S_sin|)`` above ``witness_threshold``).
    """
    if n_alpha < 2:
        raise InvalidArgumentError("n_alpha must be at least 2")
    alpha1, alpha2 = branch_cut_lattice(n_alpha)
    a1, a2 = (m.ravel() for m in np.meshgrid(alpha1, alpha2, indexing="ij"))
    direct = difference_series(a1, a2, np.full_like(a1, t_star), config)
    s_cos = direct.real
    s_sin = -direct.imag
    delta_eta = eta_many(a1 + 1j * t_star, config) - eta_many(a2 + 1j * t_star, config)
    discrepancy = np.maximum(np.abs(s_cos - delta_eta.real), np.abs(s_sin + delta_eta.imag))
    witness_all = np.maximum(np.abs(s_cos), np.abs(s_sin))
    w = int(np.argmin(witness_all))
    d = int(np.argmax(discrepancy))
    witness = float(witness_all[w])
    max_disc = float(discrepancy[d])
    grid = GridSpec(tuple(np.concatenate([alpha1, alpha2]).tolist()), (float(t_star),))
    problems = [] if witness > witness_threshold else [f"witness {witness:.3g} not above {witness_threshold:g}"]
    return _gated(
        f"branch_cut_sums[t={t_star:.6f}]",
        grid,
        max_disc,
        (float(a1[d]), float(t_star)),
        identity_threshold,
        problems,
        details={
            "witness": witness,
            "witness_threshold": witness_threshold,
            "witness_pair": {"alpha1": float(a1[w]), "alpha2": float(a2[w])},
            "worst_identity_pair": {"alpha1": float(a1[d]), "alpha2": float(a2[d])},
            "s_sin_max_abs": float(np.abs(s_sin).max()),
        },
        evidence=FINITE_EVIDENCE,
    )


# --- zero and geometry sweeps ---------------------------------------------

@dataclass(frozen=True)
class VerifyConfig:
    """Thresholds and grids for :func:`run_all`; all defaults follow the documented gate."""

    eval: EvalConfig = DEFAULT_CONFIG
    symmetry_grid: GridSpec = GridSpec.uniform(0.0, 1.0, 20, 0.0, 30.0, 20)
    symmetry_threshold: float | None = None  # 4 * tolerance
    derivative_grid: GridSpec = GridSpec.uniform(0.1, 0.9, 9, 1.0, 29.0, 9)
    cr_step: float = CR_REFERENCE_STEP
    functional_grid: GridSpec = GridSpec.uniform(0.1, 0.9, 9, 0.5, 29.5, 9)
    functional_threshold: float = 1e-8
    scan_t_max: float = 30.0
    scan_step: float = 0.01
    scan_threshold: float = zeros.DEFAULT_SCAN_THRESHOLD
    acceptance_residual: float = zeros.DEFAULT_ACCEPTANCE_RESIDUAL
    anchor_window: float = 0.05
    oracle_agreement: float = 1e-6
    zero_side_threshold: float = 1e-5
    branch_n_alpha: int = 10
    branch_extra_t: tuple[float, ...] = (5.0, 10.0, 20.0)
    branch_witness_threshold: float = 1e-6
    branch_identity_threshold: float = 1e-9
    orthogonality_alphas: tuple[float, ...] = tuple(np.linspace(0.1, 0.9, 9).tolist())
    orthogonality_betas: tuple[float, ...] = tuple(np.linspace(11.0, 15.0, 9).tolist())
    orthogonality_threshold: float = 1e-4
    degeneracy_threshold: float = geometry.DEFAULT_DEGENERACY_THRESHOLD
    fd_step: float = geometry.DEFAULT_FD_STEP
    partition: tuple[float, ...] = REFERENCE_PARTITION
    partition_samples: int = 200
    monotonicity_samples: int = 2000
    ratio_band: tuple[float, float] = (1.9, 2.1)
    census_delta: float = 0.05
    census_window: float = 5.0
    winding_samples: int = 64
    threads: int | None = None

    def loosened(self, threshold: float) -> "VerifyConfig":
        """Copy with every pass/fail threshold relaxed to at least ``threshold``."""
        return replace(
            self,
            symmetry_threshold=max(threshold, 4.0 * self.eval.tolerance if self.symmetry_threshold is None else self.symmetry_threshold),
            functional_threshold=max(self.functional_threshold, threshold),
            acceptance_residual=max(self.acceptance_residual, threshold),
            oracle_agreement=max(self.oracle_agreement, threshold),
            zero_side_threshold=max(self.zero_side_threshold, threshold),
            branch_identity_threshold=max(self.branch_identity_threshold, threshold),
            branch_witness_threshold=min(self.branch_witness_threshold, threshold),
            orthogonality_threshold=max(self.orthogonality_threshold, threshold),
        )


def check_zero_locations(records: Sequence[zeros.ZeroRecord], cfg: VerifyConfig) -> PropertyReport:
    """Three line zeros near the published ordinates, Newton and the
    derivative-free minimum agreeing, each residual below acceptance."""
    line = [r for r in records if r.kind == zeros.CRITICAL_LINE]
    gaps = []
    problems = []
    for rec in line:
        t_oracle, _ = zeros.minimum_on_line(rec.t - cfg.scan_step, rec.t + cfg.scan_step, cfg.eval)
        gaps.append(abs(t_oracle - rec.t))
        if rec.residual >= cfg.acceptance_residual:
            problems.append(f"residual {rec.residual:.3g} at t = {rec.t:.9f}")
    if len(line) != len(REFERENCE_ZERO_ANCHORS):
        problems.append(f"found {len(line)} zeros, expected {len(REFERENCE_ZERO_ANCHORS)}")
    else:
        for anchor, rec in zip(REFERENCE_ZERO_ANCHORS, line):
            if abs(rec.t - anchor) > cfg.anchor_window:
                problems.append(f"zero at t = {rec.t:.6f} not within {cfg.anchor_window} of {anchor}")
    worst = max(gaps) if gaps else math.inf
    k = int(np.argmax(gaps)) if gaps else None
    return _gated(
        "zero_locations",
        None,
        worst,
        None if k is None else (0.5, line[k].t),
        cfg.oracle_agreement,
        problems,
        details={
            "oracle_gaps": gaps,
            "zeros": [{"t": r.t, "residual": r.residual, "method": r.method, "iterations": r.iterations} for r in line],
            "anchors": list(REFERENCE_ZERO_ANCHORS),
        },
        evidence=FINITE_EVIDENCE,
    )


def check_zero_consistency(records: Sequence[zeros.ZeroRecord], cfg: VerifyConfig) -> PropertyReport:
    """At each line zero: the mirror value ``eta(1 - s*)`` vanishes and the
    functional equation holds with both sides small."""
    line = [r for r in records if r.kind == zeros.CRITICAL_LINE]
    rows = []
    residuals = []
    problems = [] if line else ["no critical-line zeros to check"]
    for rec in line:
        s = complex(rec.sigma, rec.t)
        mirror = abs(eta(1.0 - s, cfg.eval).value)
        left, right = functional_equation_sides(s, cfg.eval)
        fe = functional_equation_residual(s, cfg.eval)
        if not mirror < 10.0 * cfg.acceptance_residual:
            problems.append(f"|eta(1 - s*)| = {mirror:.3g} at t = {rec.t:.9f}")
        if not (abs(left) < cfg.zero_side_threshold and abs(right) < cfg.zero_side_threshold):
            problems.append(f"functional-equation sides not small at t = {rec.t:.9f}")
        residuals.append(fe)
        rows.append({"t": rec.t, "mirror_modulus": mirror, "lhs_modulus": abs(left), "rhs_modulus": abs(right),
                     "functional_residual": fe})
    worst = max(residuals) if residuals else math.inf
    k = int(np.argmax(residuals)) if residuals else None
    return _gated(
        "zero_mirror_and_functional_equation",
        None,
        worst,
        None if k is None else (0.5, line[k].t),
        cfg.functional_threshold,
        problems,
        details={"zeros": rows, "mirror_threshold": 10.0 * cfg.acceptance_residual},
    )


def check_factor_zeros(cfg: VerifyConfig, t_max: float = 20.0, threshold: float = 1e-8) -> PropertyReport:
    records = zeros.sigma1_factor_zeros(t_max, cfg.eval)
    expected = [2.0 * math.pi * k / math.log(2.0) for k in range(1, len(records) + 1)]
    in_figure = []
    for rec in records:
        hits = [i for i, (lo, hi) in enumerate(FIGURE_INTERVALS) if lo <= rec.t <= hi]
        in_figure.append("abcdef"[hits[0]] if hits else None)
    residuals = [r.residual for r in records]
    worst = max(residuals) if residuals else math.inf
    problems = []
    if len(records) != 2:
        problems.append(f"{len(records)} factor zeros up to t = {t_max:g}, expected 2")
    if not all(abs(r.t - e) < 1e-12 for r, e in zip(records, expected)):
        problems.append("factor zeros differ from 2 pi k / log 2")
    if in_figure != ["a", "c"]:
        problems.append(f"factor zeros fall in figure panels {in_figure}, expected ['a', 'c']")
    return _gated(
        "sigma1_factor_zeros",
        None,
        worst,
        None if not records else (1.0, records[int(np.argmax(residuals))].t),
        threshold,
        problems,
        details={"t_values": [r.t for r in records], "figure_panels": in_figure},
    )


def check_orthogonality(cfg: VerifyConfig) -> PropertyReport:
    diags = geometry.orthogonality_lattice(
        cfg.orthogonality_alphas, cfg.orthogonality_betas, cfg.eval, cfg.degeneracy_threshold, cfg.fd_step
    )
    usable = [d for d in diags if not d.degenerate]
    degenerate = [(d.alpha, d.beta) for d in diags if d.degenerate]
    if usable:
        worst = max(usable, key=lambda d: d.product_residual)
        max_res, point = worst.product_residual, (worst.alpha, worst.beta)
    else:
        max_res, point = math.inf, None
    return PropertyReport(
        check_name="orthogonality",
        grid=GridSpec(cfg.orthogonality_alphas, cfg.orthogonality_betas),
        max_residual=max_res,
        worst_point=point,
        threshold=cfg.orthogonality_threshold,
        passed=max_res < cfg.orthogonality_threshold,
        details={"degenerate_points": degenerate, "checked_points": len(usable)},
    )


def check_region_partition(cfg: VerifyConfig) -> PropertyReport:
    checks = geometry.check_partition(cfg.partition, cfg.partition_samples, cfg.eval)
    bad = [c for c in checks if not c.valid]
    return PropertyReport(
        check_name="region_partition",
        grid=GridSpec((0.0, 1.0), tuple(cfg.partition)),
        max_residual=float(len(bad)),
        worst_point=None if not bad else (0.0, bad[0].t_lo),
        threshold=1.0,
        passed=not bad,
        details={"regions": [{"m": c.index_m, "t_lo": c.t_lo, "t_hi": c.t_hi, "problems": list(c.problems)} for c in checks]},
    )


def check_monotonicity(cfg: VerifyConfig) -> PropertyReport:
    """Chord ordering on sigma- and t-curves inside each region of the partition."""
    regions = geometry.validate_partition(cfg.partition, cfg.partition_samples, cfg.eval)
    rows = []
    total_violations = 0
    means = []
    for region in regions:
        for trace in geometry.region_traces(region, cfg.monotonicity_samples, config=cfg.eval):
            rep = geometry.monotonicity_check(trace)
            total_violations += len(rep.violations)
            means.append(rep.ratio_mean)
            rows.append({"region": region.index_m, "trace": rep.trace_id, "violations": len(rep.violations),
                         "ratio_min": rep.ratio_min, "ratio_mean": rep.ratio_mean})
    lo, hi = cfg.ratio_band
    problems = [] if all(lo <= m <= hi for m in means) else [f"mean chord ratio outside [{lo:g}, {hi:g}]"]
    return _gated(
        "monotonicity",
        GridSpec((0.0, 0.25, 0.5, 0.75, 1.0), tuple(cfg.partition)),
        float(total_violations),
        None,
        1.0,
        problems,
        details={"samples": cfg.monotonicity_samples, "ratio_band": list(cfg.ratio_band),
                 "mean_ratio_range": [min(means), max(means)], "traces": rows},
    )


def check_winding_census(records: Sequence[zeros.ZeroRecord] | None, cfg: VerifyConfig) -> PropertyReport:
    """Argument-principle counts: none off the line, all line zeros accounted for."""
    d = cfg.census_delta
    t_max = cfg.scan_t_max
    wn = lambda *r: zeros.winding_number(zeros.Rectangle(*r), cfg.winding_samples, cfg.eval)
    left = wn(d, 0.5 - d, 0.0, t_max)
    right = wn(0.5 + d, 1.0 - d, 0.0, t_max)
    full = wn(d, 1.0 - d, 0.0, t_max)
    problems = []
    windows = []
    if records is None:
        problems.append("zero catalog unavailable")
        line_t = []
    else:
        line_t = [r.t for r in records if r.kind == zeros.CRITICAL_LINE]
    edges = np.arange(0.0, t_max + 1e-9, cfg.census_window)
    for lo, hi in zip(edges, edges[1:]):
        count = wn(d, 1.0 - d, float(lo), float(hi))
        listed = sum(lo <= t <= hi for t in line_t)
        windows.append({"t_lo": float(lo), "t_hi": float(hi), "winding": count, "catalogued": listed})
        if count != listed:
            problems.append(f"window [{lo:g}, {hi:g}]: winding {count} vs {listed} catalogued")
    if records is not None and full != len(line_t):
        problems.append(f"full-strip winding {full} vs {len(line_t)} catalogued")
    return _gated(
        "winding_census",
        GridSpec((d, 0.5 - d, 0.5 + d, 1.0 - d), tuple(edges.tolist())),
        float(abs(left) + abs(right)),
        None,
        1.0,
        problems,
        details={"left_of_line": left, "right_of_line": right, "full_strip": full, "windows": windows},
        evidence=FINITE_EVIDENCE,
    )


def _failed(name: str, exc: Exception) -> PropertyReport:
    return PropertyReport(name, None, math.inf, None, 1.0, False, details={"error": f"{type(exc).__name__}: {exc}"})


def _thread_count(cfg: VerifyConfig) -> int:
    if cfg.threads is not None:
        return max(1, cfg.threads)
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_all(cfg: VerifyConfig | None = None, catalog_path=None) -> list[PropertyReport]:
    """Run every check; failures of one check never stop the others.

    Line zeros come from ``catalog_path`` when given, otherwise from a fresh
    scan of ``[0, scan_t_max]``.  Reports are returned in a fixed order.
    """
    cfg = cfg or VerifyConfig()
    records: list[zeros.ZeroRecord] | None
    catalog_error = None
    try:
        if catalog_path is not None:
            records = zeros.load_catalog(catalog_path).records
        else:
            records = zeros.find_critical_line_zeros(0.0, cfg.scan_t_max, cfg.scan_step, cfg.scan_threshold,
                                                     cfg.eval, cfg.acceptance_residual)
    except (EtaLabError, OSError) as exc:
        records, catalog_error = None, exc

    jobs: list[tuple[str, Callable[[], PropertyReport]]] = []

    def zero_job(name, fn):
        if records is None:
            return name, lambda: _failed(name, catalog_error)
        return name, lambda: fn(records, cfg)

    jobs.append(zero_job("zero_locations", check_zero_locations))
    jobs.append(zero_job("zero_mirror_and_functional_equation", check_zero_consistency))
    jobs.append(("sigma1_factor_zeros", lambda: check_factor_zeros(cfg)))
    jobs.append(("symmetry", lambda: check_symmetry(cfg.symmetry_grid, cfg.eval, cfg.symmetry_threshold)))
    jobs.append(("cauchy_riemann", lambda: check_cauchy_riemann(cfg.derivative_grid, cfg.cr_step, cfg.eval)))
    jobs.append(("functional_equation", lambda: check_functional_equation(cfg.functional_grid, cfg.eval, cfg.functional_threshold)))
    line_t = [r.t for r in records if r.kind == zeros.CRITICAL_LINE] if records else []
    for t_star in list(line_t) + list(cfg.branch_extra_t):
        jobs.append((f"branch_cut_sums[t={t_star:.6f}]", lambda t_star=t_star: check_branch_cut_sums(
            t_star, cfg.branch_n_alpha, cfg.eval, cfg.branch_witness_threshold, cfg.branch_identity_threshold)))
    jobs.append(("orthogonality", lambda: check_orthogonality(cfg)))
    jobs.append(("region_partition", lambda: check_region_partition(cfg)))
    jobs.append(("monotonicity", lambda: check_monotonicity(cfg)))
    jobs.append(("winding_census", lambda: check_winding_census(records, cfg)))

    def guarded(name, fn):
        try:
            return fn()
        except Exception as exc:  # a broken check is reported, never fatal
            return _failed(name, exc)

    threads = _thread_count(cfg)
    if threads == 1:
        return [guarded(name, fn) for name, fn in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(guarded, name, fn) for name, fn in jobs]
        return [f.result() for f in futures]


def all_passed(reports: Sequence[PropertyReport]) -> bool:
    return all(r.passed for r in reports)


def report_json(reports: Sequence[PropertyReport]) -> str:
    """One JSON document with one object per check, keys in a fixed order."""
    doc = {
        "passed": all_passed(reports),
        "note": "Checks cover finite grids and t <= 30; they do not establish claims for all t.",
        "checks": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"
