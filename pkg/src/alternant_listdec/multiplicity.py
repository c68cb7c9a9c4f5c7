"""Choosing the two multiplicity levels (m1, m2).

Candidate 1 maximizes the ratio-dependent radius bound over a grid of
rho = m2/m1. Candidate 2 runs the greedy reliability-driven assignment on a
4-ary symmetric reliability matrix and reads off the two dominant levels.
"""
from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .bounds import sigma_nu
from .errors import DomainError


@dataclass(frozen=True)
class MultiplicityMatrix:
    M: np.ndarray  # n x 4 non-negative integers
    m_total: int


def build_reliability(t: int, n: int, R) -> np.ndarray:
    """n x 4 matrix: 1 - t/n on the received symbol y*2 + z, (t/n)/3 elsewhere."""
    if not 0 <= t <= n:
        raise DomainError(f"need 0 <= t <= n, got t={t}, n={n}")
    R = np.asarray(R)
    if R.shape != (2, n):
        raise DomainError(f"received word must be 2 x {n}")
    p = t / n
    Pi = np.full((n, 4), p / 3)
    sym = (R[0].astype(int) * 2 + R[1].astype(int))
    Pi[np.arange(n), sym] = 1 - p
    return Pi


def _step_cost(m: int) -> int:
    # (m^2 + 5m + 6) / 2 = (m + 2)(m + 3) / 2
    return (m + 2) * (m + 3) // 2


def assign_multiplicities(Pi, m_total: int, n: Optional[int] = None) -> MultiplicityMatrix:
    """Greedy assignment of m_total * n unit multiplicities.

    Each step picks the largest current score pi*_{i,j}, then divides the
    original pi_{i,j} by (m^2 + 5m + 6)/2 for the old count m. Ties go to the
    larger original pi, then the row with the fewest picks so far, then the
    smaller row and column. None of these look at column positions before the
    last step, so rows of a symmetric matrix stay permutations of each other.
    """
    Pi = np.asarray(Pi, dtype=float)
    if m_total < 1:
        raise DomainError("m_total must be >= 1")
    rows = Pi.shape[0] if n is None else n
    if Pi.shape != (rows, 4):
        raise DomainError(f"reliability matrix must be {rows} x 4")
    M = np.zeros((rows, 4), dtype=np.int64)
    row_picks = [0] * rows
    score = Pi.copy()
    heap = [(-score[i, j], -Pi[i, j], 0, i, j) for i in range(rows) for j in range(4)]
    heapq.heapify(heap)
    s = m_total * rows
    while s:
        neg, negpi, rp, i, j = heapq.heappop(heap)
        if -neg != score[i, j]:
            continue
        if rp != row_picks[i]:
            # the row gained picks since this entry was pushed; its key only got worse
            heapq.heappush(heap, (neg, negpi, row_picks[i], i, j))
            continue
        score[i, j] = Pi[i, j] / _step_cost(int(M[i, j]))
        M[i, j] += 1
        row_picks[i] += 1
        s -= 1
        heapq.heappush(heap, (-score[i, j], -Pi[i, j], row_picks[i], i, j))
    return MultiplicityMatrix(M, m_total)


def dominant_levels(M) -> Tuple[int, int]:
    """Most common per-row maximum and most common remaining entry."""
    M = np.asarray(getattr(M, "M", M))
    hi, lo = Counter(), Counter()
    for row in M.tolist():
        srt = sorted(row, reverse=True)
        hi[srt[0]] += 1
        lo.update(srt[1:])
    m1 = max(hi.items(), key=lambda kv: (kv[1], kv[0]))[0]
    m2 = max(lo.items(), key=lambda kv: (kv[1], kv[0]))[0]
    return int(m1), int(m2)


def closed_form_ratio(t: int, n: int) -> float:
    """Large-m_total limit of m2/m1 under the symmetric reliability matrix."""
    p = t / n
    return float(np.sqrt(p / (3 * (1 - p))))


def best_ratio(d_over_n: float, grid_step: float = 1e-3) -> Tuple[float, float]:
    """Grid argmax of sigma(rho) over [0, 1) for a real d/n; ties go to the smaller rho."""
    if not 0 < grid_step <= 0.1:
        raise DomainError("grid step must lie in (0, 0.1]")
    steps = int(np.ceil(1 / grid_step - 1e-9))
    best_rho, best_sigma = 0.0, None
    for i in range(steps):
        rho = i * grid_step
        if rho >= 1:
            break
        sig, _ = sigma_nu(rho, d_over_n)
        if best_sigma is None or sig > best_sigma:
            best_rho, best_sigma = rho, sig
    return best_rho, best_sigma


def candidate1_ratio(n: int, d: int, grid_step: float = 1e-3) -> Tuple[float, float]:
    if not 0 < d < n:
        raise DomainError(f"need 0 < d < n, got d={d}, n={n}")
    return best_ratio(d / n, grid_step)


def ratio_to_integers(rho: float, m1_max: int) -> Tuple[int, int]:
    """Closest m2/m1 <= rho with m1 <= m1_max and m2 < m1; ties toward smaller m1."""
    if not 0 <= rho < 1:
        raise DomainError(f"ratio must lie in [0, 1), got {rho}")
    if m1_max < 1:
        raise DomainError("m1_max must be >= 1")
    best, best_err = (1, 0), rho
    for m1 in range(1, m1_max + 1):
        m2 = min(int(np.floor(rho * m1 + 1e-12)), m1 - 1)
        err = rho - m2 / m1
        if err < best_err - 1e-12:
            best, best_err = (m1, m2), err
    return best


def candidate1_pair(n: int, d: int, m_total: int, grid_step: float = 1e-3) -> Tuple[int, int]:
    """Integer pair for candidate 1 with m1 + 3 m2 roughly m_total."""
    rho, _ = candidate1_ratio(n, d, grid_step)
    m1_max = max(1, int(m_total // (1 + 3 * rho)))
    return ratio_to_integers(rho, m1_max)


def candidate2_pair(n: int, t: int, m_total: int) -> Tuple[int, int]:
    R = np.zeros((2, n), dtype=np.uint8)
    return dominant_levels(assign_multiplicities(build_reliability(t, n, R), m_total))
