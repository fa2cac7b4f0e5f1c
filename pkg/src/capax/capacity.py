"""Logarithmic capacity of two real intervals [-1, alpha] U [beta, 1].

The pair (alpha, beta) is charted by an elliptic modulus k and a parameter
lambda in (0, 1); the capacity then has a closed form in Jacobi's theta and
elliptic functions.  Reflection (alpha, beta) -> (-beta, -alpha) maps
lambda -> 1 - lambda and leaves the capacity unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .elliptic import (
    Modulus,
    ModulusLike,
    SERIES_TOL,
    as_modulus,
    complete_K,
    inverse_sn,
    jacobi_sncndn,
    theta_quad,
)
from .errors import DegenerateIntervalError, DomainError

DEGENERACY_GAP = 1e-12


@dataclass(frozen=True)
class IntervalPair:
    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError("alpha and beta must be finite")
        if not a < b:
            raise DomainError("alpha must be < beta")
        if not -1.0 < a:
            raise DomainError("alpha must be > -1")
        if not b < 1.0:
            raise DomainError("beta must be < 1")
        if b - a < DEGENERACY_GAP:
            raise DegenerateIntervalError("beta - alpha is below 1e-12: the gap has closed")
        if a <= -1.0 + DEGENERACY_GAP:
            raise DegenerateIntervalError("alpha is within 1e-12 of -1: left interval has vanished")
        if b >= 1.0 - DEGENERACY_GAP:
            raise DegenerateIntervalError("beta is within 1e-12 of 1: right interval has vanished")

    def reflected(self) -> "IntervalPair":
        return IntervalPair(-self.beta, -self.alpha)

    @property
    def is_canonical(self) -> bool:
        """True when alpha + beta >= 0, i.e. lambda <= 1/2."""
        return self.alpha + self.beta >= 0.0

    def canonical(self) -> tuple["IntervalPair", bool]:
        if self.is_canonical:
            return self, False
        return self.reflected(), True


@dataclass(frozen=True)
class ModulusParam:
    modulus: Modulus
    lam: float

    @property
    def k(self) -> float:
        return self.modulus.k


@dataclass(frozen=True)
class CapacityResult:
    cap: float
    param: ModulusParam
    reflected_branch: bool


def modulus_squares(ip: IntervalPair) -> tuple[float, float]:
    """(k**2, k'**2) straight from the interval endpoints."""
    a, b = ip.alpha, ip.beta
    den = (1.0 - a) * (1.0 + b)
    return 2.0 * (b - a) / den, (1.0 + a) * (1.0 - b) / den


def _lambda_K(ip: IntervalPair, mod: Modulus) -> float:
    # u = lambda*K solves sn^2(u) = (1-alpha)/2, cn^2(u) = (1+alpha)/2
    s = math.sqrt(0.5 * (1.0 - ip.alpha))
    c = math.sqrt(0.5 * (1.0 + ip.alpha))
    return inverse_sn(s, mod, cn=c)


def param_from_intervals(ip: IntervalPair) -> ModulusParam:
    """Chart (alpha, beta) -> (k, lambda)."""
    mod = Modulus.from_squares(*modulus_squares(ip))
    canon, flipped = ip.canonical()
    lam = _lambda_K(canon, mod) / complete_K(mod)
    return ModulusParam(mod, 1.0 - lam if flipped else lam)


def intervals_from_param(p: ModulusParam) -> IntervalPair:
    """Chart (k, lambda) -> (alpha, beta)."""
    if not 0.0 < p.lam < 1.0:
        raise DomainError(f"lambda must lie in (0, 1), got {p.lam!r}")
    mod = p.modulus
    t = jacobi_sncndn(p.lam * complete_K(mod), mod)
    sn2, cn2, dn2 = t.sn ** 2, t.cn ** 2, t.dn ** 2
    alpha = cn2 - sn2
    beta = (cn2 - mod.k_prime ** 2 * sn2) / dn2
    return IntervalPair(alpha, beta)


def capacity_forms(mod: ModulusLike, lam: float, tol: float = SERIES_TOL) -> tuple[float, float]:
    """Both closed forms of the capacity evaluated at argument ``lam*K``.

    Returns ``(Theta(0)^4 / (2 dn^2 Theta^4), 2 k'^2 K^2 / (pi^2 dn^2 Theta^4))``.
    Passing ``1 - lam`` gives the reflected-branch evaluation.
    """
    mod = as_modulus(mod)
    K = complete_K(mod)
    u = lam * K
    dn = jacobi_sncndn(u, mod).dn
    th = theta_quad([0.0, u], mod, tol).theta
    ratio = (th[0] / th[1]) ** 4
    denom = dn * dn * th[1] ** 4
    return ratio / (2.0 * dn * dn), 2.0 * (mod.k_prime * K / math.pi) ** 2 / denom


def capacity_exact(ip: IntervalPair, tol: float = SERIES_TOL) -> CapacityResult:
    """Exact capacity; evaluated at argument min(lambda, 1-lambda)*K."""
    canon, flipped = ip.canonical()
    mod = Modulus.from_squares(*modulus_squares(canon))
    u = _lambda_K(canon, mod)
    K = complete_K(mod)
    lam = u / K
    _, cap = capacity_forms(mod, lam, tol)
    param = ModulusParam(mod, 1.0 - lam if flipped else lam)
    return CapacityResult(cap, param, flipped)


def capacity(alpha: float, beta: float) -> float:
    return capacity_exact(IntervalPair(alpha, beta)).cap


def normalize_intervals(a: float, b: float, c: float, d: float):
    """Map [a, b] U [c, d] affinely onto [-1, alpha] U [beta, 1].

    Returns ``(pair, scale, shift)``: a point x maps to ``x / scale + shift``
    and the capacity of the original set is ``scale * capacity_exact(pair)``.
    """
    if not (a < b < c < d):
        raise DomainError("endpoints must satisfy a < b < c < d")
    scale = 0.5 * (d - a)
    mid = 0.5 * (a + d)
    shift = -mid / scale
    alpha = (b - mid) / scale
    beta = (c - mid) / scale
    return IntervalPair(alpha, beta), scale, shift


def robinson_arc_capacity(ip: IntervalPair) -> float:
    """Capacity of the two unit-circle arcs whose real projection is the pair."""
    return math.sqrt(2.0 * capacity_exact(ip).cap)
