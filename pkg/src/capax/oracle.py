"""Transfinite-diameter estimate of capacity from greedy Leja sequences.

Deliberately independent of the elliptic machinery: the only inputs are the
interval endpoints, and the estimate is the normalised geometric mean of the
pairwise distances of a greedy point configuration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .capacity import IntervalPair

CANDIDATES_PER_POINT = 40


@dataclass(frozen=True)
class LejaSequence:
    points: np.ndarray
    log_pair_sum: float  # sum over i < j of log|z_i - z_j|

    @property
    def n(self) -> int:
        return len(self.points)

    def estimate(self) -> float:
        n = self.n
        return math.exp(2.0 * self.log_pair_sum / (n * (n - 1)))


def chebyshev_nodes(a: float, b: float, m: int) -> np.ndarray:
    """m Chebyshev-Lobatto nodes on [a, b], endpoints included, ascending."""
    t = -np.cos(np.pi * np.arange(m) / (m - 1))
    nodes = 0.5 * (a + b) + 0.5 * (b - a) * t
    nodes[0], nodes[-1] = a, b
    return nodes


def candidate_grid(ip: IntervalPair, n: int) -> np.ndarray:
    m = CANDIDATES_PER_POINT * n
    return np.concatenate([chebyshev_nodes(-1.0, ip.alpha, m), chebyshev_nodes(ip.beta, 1.0, m)])


def leja_sequence(candidates: np.ndarray, n: int) -> LejaSequence:
    """Greedy Leja sequence of length n drawn from sorted ``candidates``.

    Starts at the smallest candidate; each new point maximises the sum of
    log-distances to the points already chosen, ties going to the smallest
    coordinate.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    cand = np.asarray(candidates, dtype=float)
    if len(cand) < n:
        raise ValueError("need at least n candidate points")
    idx = np.empty(n, dtype=np.intp)
    idx[0] = 0
    score = np.zeros_like(cand)
    total = 0.0
    with np.errstate(divide="ignore"):
        for i in range(1, n):
            score += np.log(np.abs(cand - cand[idx[i - 1]]))
            j = int(np.argmax(score))
            idx[i] = j
            total += score[j]
    return LejaSequence(cand[idx], total)


def leja_capacity_estimate(ip: IntervalPair, n: int) -> float:
    """Transfinite-diameter estimate from an n-point Leja sequence on the pair.

    The sequence is built on the canonical orientation (alpha + beta >= 0)
    so that the estimate is exactly invariant under reflection.
    """
    canon, _ = ip.canonical()
    return leja_sequence(candidate_grid(canon, n), n).estimate()


def leja_points(ip: IntervalPair, n: int) -> np.ndarray:
    canon, flipped = ip.canonical()
    pts = leja_sequence(candidate_grid(canon, n), n).points
    return -pts if flipped else pts


def convergence_report(ip: IntervalPair, ns, exact: float | None = None) -> list[tuple[int, float, float]]:
    """Rows ``(n, estimate, estimate - exact)`` for increasing n."""
    ns = list(ns)
    if ns != sorted(ns):
        raise ValueError("ns must be ascending")
    if exact is None:
        from .capacity import capacity_exact

        exact = capacity_exact(ip).cap
    rows = []
    for n in ns:
        est = leja_capacity_estimate(ip, n)
        rows.append((n, est, est - exact))
    return rows


def report_is_monotone(rows) -> bool:
    errs = [abs(r[2]) for r in rows]
    return all(b < a for a, b in zip(errs, errs[1:]))
