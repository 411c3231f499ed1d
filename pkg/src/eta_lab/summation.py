"""Vectorised acceleration of alternating series ``sum_{n>=1} (-1)**(n-1) a_n``.

Two schemes are provided:

* :func:`aitken_sum` applies the Aitken delta-squared transform repeatedly to
  the tail of the partial-sum sequence, doubling the number of terms until
  two successive accelerated values agree to ``tol / 2``.
* :func:`euler_sum` sums a head of ``N`` terms directly and applies the Euler
  transform to the remaining tail.  Because it only needs forward differences
  of smooth terms it also sums series whose terms do not decay (``sigma = 0``
  for eta), returning the Abel/analytic-continuation value.

Both take a *term function* ``term_fn(idx, n)`` which must return a complex
array of shape ``(len(idx), len(n))`` holding ``a_n`` (without the alternating
sign) for the selected evaluation points ``idx``.  Every point is processed
with the same sequence of term counts whether it is evaluated alone or in a
batch, so batch and scalar results agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidArgumentError

TermFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

EPS = np.finfo(float).eps
# Rounding floor added to every heuristic error estimate, relative to the
# largest partial sum magnitude seen.
ROUNDING_FACTOR = 256.0

AITKEN_START_TERMS = 16
AITKEN_MAX_PASSES = 20
EULER_MIN_HEAD = 32
EULER_MAX_DIFFERENCES = 64


def _check_budget(tol: float, max_terms: int) -> None:
    if not tol > 0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tol}")
    if max_terms < 1:
        raise InvalidArgumentError(f"max_terms must be positive, got {max_terms}")


@dataclass(frozen=True)
class SumResult:
    values: np.ndarray
    terms_used: np.ndarray
    estimates: np.ndarray
    converged: np.ndarray


def _signs(n: np.ndarray) -> np.ndarray:
    return np.where(n.astype(np.int64) % 2 == 1, 1.0, -1.0)


def partial_sums(term_fn: TermFunction, idx: np.ndarray, n_terms: int) -> np.ndarray:
    """Return the partial sums ``S_1 .. S_n_terms`` for each selected point (rows)."""
    n = np.arange(1, n_terms + 1, dtype=float)
    terms = term_fn(idx, n) * _signs(n)
    return np.cumsum(terms, axis=1)


def iterated_aitken(rows: np.ndarray, passes: int) -> np.ndarray:
    """Apply ``passes`` rounds of Aitken's delta-squared transform along axis 1.

    Each round shortens the rows by two.  Where the second difference is at
    rounding level the sequence is treated as converged and passed through.
    """
    row = rows
    for _ in range(passes):
        d1 = row[:, 2:] - row[:, 1:-1]
        d2 = row[:, 2:] - 2.0 * row[:, 1:-1] + row[:, :-2]
        scale = np.maximum(np.abs(row[:, 2:]), 1e-300)
        ok = np.abs(d2) > 16.0 * EPS * scale
        safe = np.where(ok, d2, 1.0)
        row = row[:, 2:] - np.where(ok, d1 * d1 / safe, 0.0)
    return row


def _aitken_value(sums: np.ndarray) -> np.ndarray:
    m = sums.shape[1]
    passes = min(m // 4, AITKEN_MAX_PASSES)
    tail = sums[:, m - (2 * passes + 1):]
    return iterated_aitken(tail, passes)[:, -1]


def aitken_sum(
    term_fn: TermFunction,
    n_points: int,
    tol: float,
    max_terms: int,
    lockstep: bool = False,
) -> SumResult:
    """Iterated Aitken acceleration with term doubling.

    With ``lockstep`` all points keep doubling until every one of them has
    converged, so they share a common term count (used for finite-difference
    stencils where a change of term count between neighbours would be noise).
    """
    _check_budget(tol, max_terms)
    values = np.full(n_points, np.nan + 0j)
    estimates = np.full(n_points, np.inf)
    terms_used = np.zeros(n_points, dtype=np.int64)
    converged = np.zeros(n_points, dtype=bool)
    prev = np.full(n_points, np.nan + 0j)

    active = np.arange(n_points)
    m = AITKEN_START_TERMS
    while active.size and m <= max_terms:
        sums = partial_sums(term_fn, active, m)
        v = _aitken_value(sums)
        floor = ROUNDING_FACTOR * EPS * np.max(np.abs(sums), axis=1)
        diff = np.abs(v - prev[active])
        ok = diff < tol / 2.0
        values[active] = v
        estimates[active] = np.where(np.isnan(diff), np.inf, np.maximum(diff, floor))
        terms_used[active] = m
        prev[active] = v
        if lockstep:
            if ok.all():
                converged[active] = True
                active = active[:0]
        else:
            converged[active[ok]] = True
            active = active[~ok]
        m *= 2
    return SumResult(values, terms_used, estimates, converged)


def _euler_head(freq: float) -> int:
    head = EULER_MIN_HEAD
    while head < 4.0 * abs(freq):
        head *= 2
    return head


def _euler_group(term_fn: TermFunction, idx: np.ndarray, head: int, tol: float):
    n_head = np.arange(1, head + 1, dtype=float)
    head_terms = term_fn(idx, n_head) * _signs(n_head)
    head_sum = head_terms.sum(axis=1)
    n_tail = np.arange(head + 1, head + EULER_MAX_DIFFERENCES + 2, dtype=float)
    diffs = term_fn(idx, n_tail)

    k_max = EULER_MAX_DIFFERENCES
    contributions = np.empty((idx.size, k_max), dtype=complex)
    for k in range(k_max):
        contributions[:, k] = (-1.0) ** k * diffs[:, 0] / 2.0 ** (k + 1)
        diffs = diffs[:, 1:] - diffs[:, :-1]
    small = np.abs(contributions) < tol / 4.0
    # stop after the first pair of consecutive contributions below tol / 4
    pair = small[:, 1:] & small[:, :-1]
    has_stop = pair.any(axis=1)
    stop = np.where(has_stop, np.argmax(pair, axis=1) + 1, k_max - 1)

    tail = np.empty(idx.size, dtype=complex)
    est = np.empty(idx.size)
    for row, k in enumerate(stop):
        tail[row] = contributions[row, : k + 1].sum()
        est[row] = 2.0 * abs(contributions[row, k])
    sign = 1.0 if head % 2 == 0 else -1.0
    total = head_sum + sign * tail
    floor = ROUNDING_FACTOR * EPS * np.maximum(np.abs(total), 1.0)
    return total, np.maximum(est, floor), head + stop + 1, has_stop


def euler_sum(
    term_fn: TermFunction,
    freqs: np.ndarray,
    tol: float,
    max_terms: int,
    lockstep: bool = False,
) -> SumResult:
    """Head-plus-Euler-tail summation.

    ``freqs`` gives for each point the oscillation frequency of its terms in
    ``log n`` (``|t|`` for eta); the head length is the smallest power-of-two
    multiple of 32 exceeding ``4 |t|`` so that the tail terms vary slowly.
    """
    _check_budget(tol, max_terms)
    freqs = np.abs(np.asarray(freqs, dtype=float))
    n_points = freqs.size
    values = np.full(n_points, np.nan + 0j)
    estimates = np.full(n_points, np.inf)
    terms_used = np.zeros(n_points, dtype=np.int64)
    converged = np.zeros(n_points, dtype=bool)

    heads = np.array([_euler_head(f) for f in freqs], dtype=np.int64)
    if lockstep and n_points:
        heads[:] = heads.max()
    pending = np.arange(n_points)
    while pending.size:
        retry = []
        for head in np.unique(heads[pending]):
            idx = pending[heads[pending] == head]
            if head + EULER_MAX_DIFFERENCES + 1 > max_terms:
                continue
            total, est, used, ok = _euler_group(term_fn, idx, int(head), tol)
            values[idx] = total
            estimates[idx] = est
            terms_used[idx] = used
            if lockstep and not ok.all():
                ok[:] = False
            converged[idx[ok]] = True
            retry.extend(idx[~ok].tolist())
        pending = np.array(sorted(retry), dtype=np.int64)
        heads[pending] *= 2
    return SumResult(values, terms_used, estimates, converged)
