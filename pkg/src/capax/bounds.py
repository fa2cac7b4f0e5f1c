"""Lower and upper bounds for the capacity of [-1, alpha] U [beta, 1].

Bounds that only hold for alpha + beta >= 0 are evaluated on the reflected
pair (-beta, -alpha) otherwise; the capacity itself is reflection invariant,
so the resulting numbers bound the capacity of the original pair too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .capacity import IntervalPair, modulus_squares, param_from_intervals
from .elliptic import (
    Modulus,
    ModulusLike,
    as_modulus,
    complete_E,
    complete_K,
    jacobi_sncndn,
)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
SOLYNIN_XTOL = 1e-10
SOLYNIN_GUARD_POINTS = 1000

# exponents appearing in the elementary K and E bounds
GAMMA = (4.0 - 0.25 * math.pi * math.exp(0.5 * math.pi)) / (math.exp(0.5 * math.pi) - 4.0)
DELTA_EXP = math.log(2.0) / math.log(0.5 * math.pi)


@dataclass(frozen=True)
class AngleChart:
    phi: float
    psi: float

    @classmethod
    def from_pair(cls, ip: IntervalPair) -> "AngleChart":
        return cls(math.acos(ip.alpha), math.acos(ip.beta))


@dataclass(frozen=True)
class KEBounds:
    K1: float
    K2: float
    K3: float
    K4: float
    K5: float
    E1: float
    E2: float
    gamma: float = GAMMA
    delta_exp: float = DELTA_EXP

    @property
    def K_lower(self):
        return max(self.K1, self.K2)

    @property
    def K_upper(self):
        return min(self.K3, self.K4, self.K5)


@dataclass(frozen=True)
class BoundsReport:
    lb_symmetric: Optional[float]
    lb_pommerenke: float
    lb_elementary: float
    lb_solynin: float
    lb_solynin_delta: float
    ub_reflection: Optional[float]
    ub_unit: float
    ub_gillis: float
    ub_main: float
    ub_elementary: float
    reflected: bool

    def lower_bounds(self) -> list[float]:
        vals = [self.lb_symmetric, self.lb_pommerenke, self.lb_elementary, self.lb_solynin]
        return [v for v in vals if v is not None]

    def upper_bounds(self) -> list[float]:
        vals = [self.ub_reflection, self.ub_unit, self.ub_gillis, self.ub_main, self.ub_elementary]
        return [v for v in vals if v is not None]

    def as_dict(self) -> dict:
        return asdict(self)


def lb_symmetric(ip: IntervalPair) -> Optional[float]:
    """Capacity of the symmetric pair with the same beta; needs alpha + beta >= 0."""
    if ip.alpha + ip.beta < 0.0:
        return None
    return 0.5 * math.sqrt((1.0 - ip.beta) * (1.0 + ip.beta))


def lb_pommerenke(ip: IntervalPair) -> float:
    """Sum of the capacities of the two intervals."""
    return 0.25 * (1.0 + ip.alpha) + 0.25 * (1.0 - ip.beta)


def lb_elementary(ip: IntervalPair) -> float:
    """sqrt(k') / (1 + k') written in alpha and beta; exact when alpha + beta = 0."""
    a, b = ip.alpha, ip.beta
    num = ((1.0 - a) * (1.0 + a) * (1.0 - b) * (1.0 + b)) ** 0.25
    return num / (math.sqrt((1.0 - a) * (1.0 + b)) + math.sqrt((1.0 + a) * (1.0 - b)))


def _solynin_log(delta, phi: float, psi: float):
    # log of the bracketed product, vectorised over delta
    delta = np.asarray(delta, dtype=float)
    rest = math.pi - delta
    s1 = np.sin(psi * math.pi / (2.0 * delta))
    s2 = np.sin((math.pi - phi) * math.pi / (2.0 * rest))
    return (2.0 * delta ** 2 / math.pi ** 2) * np.log(s1) + (2.0 * rest ** 2 / math.pi ** 2) * np.log(s2)


def _solynin_dlog(delta: float, phi: float, psi: float) -> float:
    rest = math.pi - delta
    a1 = psi * math.pi / (2.0 * delta)
    a2 = (math.pi - phi) * math.pi / (2.0 * rest)
    return (4.0 * delta / math.pi ** 2 * math.log(math.sin(a1)) - psi / math.pi / math.tan(a1)
            - 4.0 * rest / math.pi ** 2 * math.log(math.sin(a2)) + (math.pi - phi) / math.pi / math.tan(a2))


def golden_section_max(f, a: float, b: float, xtol: float):
    """Maximise a unimodal f on [a, b]; returns (x, f(x))."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def lb_solynin(ip: IntervalPair) -> tuple[float, float]:
    """Solynin's lower bound maximised over delta in [psi, phi].

    Golden-section search, followed by a dense scan of the bracket (the
    objective is not known to be unimodal); the better point wins.
    Returns ``(bound, delta_star)``.
    """
    ang = AngleChart.from_pair(ip)
    phi, psi = ang.phi, ang.psi

    def f(d):
        return float(_solynin_log(d, phi, psi))

    best_d, best = golden_section_max(f, psi, phi, SOLYNIN_XTOL)
    grid = np.linspace(psi, phi, SOLYNIN_GUARD_POINTS)
    grid = np.append(grid, 0.5 * (psi + phi))
    vals = _solynin_log(grid, phi, psi)
    i = int(np.argmax(vals))
    if vals[i] > best:
        best_d, best = float(grid[i]), float(vals[i])
    # the maximum is flat, so comparisons of f only fix delta to ~sqrt(eps);
    # the derivative changes sign sharply and pins it to rounding level
    lo, hi = max(psi, best_d - 1e-6), min(phi, best_d + 1e-6)
    if lo < hi:
        glo, ghi = _solynin_dlog(lo, phi, psi), _solynin_dlog(hi, phi, psi)
        if glo > 0.0 > ghi:
            root = brentq(_solynin_dlog, lo, hi, args=(phi, psi), xtol=1e-15)
            # values at the two points agree to rounding; keep the larger
            best_d, best = root, max(best, f(root))
    return 0.5 * math.exp(best), best_d


def ub_reflection(ip: IntervalPair) -> Optional[float]:
    """Capacity of the symmetric pair with the same alpha; needs alpha + beta >= 0, alpha < 0."""
    if ip.alpha + ip.beta < 0.0 or ip.alpha >= 0.0:
        return None
    return 0.5 * math.sqrt((1.0 - ip.alpha) * (1.0 + ip.alpha))


def ub_gillis(ip: IntervalPair) -> float:
    la = math.log((1.0 + ip.alpha) / 8.0)
    lb = math.log((1.0 - ip.beta) / 8.0)
    return 2.0 * math.exp(la * lb / (la + lb))


def ub_main(ip: IntervalPair) -> float:
    """Main upper bound through dn, sn, cn at lambda*K and E/K (canonical pair)."""
    canon, _ = ip.canonical()
    p = param_from_intervals(canon)
    mod = p.modulus
    K = complete_K(mod)
    t = jacobi_sncndn(p.lam * K, mod)
    slope = complete_E(mod) / K - mod.k_prime ** 2
    log_term = math.log((1.0 + t.sn) / t.cn)
    return 0.5 * t.dn ** 2 * math.exp(2.0 * slope * log_term ** 2)


def ub_main_rewritten(ip: IntervalPair, E_over_K: Optional[float] = None) -> float:
    """The main bound written directly in alpha and beta (canonical pair).

    ``E_over_K`` overrides the ratio E(k)/K(k); by default it is computed.
    """
    canon, _ = ip.canonical()
    a, b = canon.alpha, canon.beta
    m, mp = modulus_squares(canon)
    if E_over_K is None:
        mod = Modulus.from_squares(m, mp)
        E_over_K = complete_E(mod) / complete_K(mod)
    log_term = math.log((math.sqrt(2.0) + math.sqrt(1.0 - a)) / math.sqrt(1.0 + a))
    return (1.0 + a) / (2.0 * (1.0 + b)) * math.exp(2.0 * (E_over_K - mp) * log_term ** 2)


def _ke_formulas(k, kp, lib):
    """The seven elementary bounds; ``lib`` is ``math`` or ``mpmath``."""
    pi, log = lib.pi, lib.log
    num = getattr(lib, "mpf", float)
    kp2 = kp * kp
    e_half_pi = lib.exp(pi / 2)
    gamma = (4 - pi / 4 * e_half_pi) / (e_half_pi - 4)
    delta = log(2) / log(pi / 2)
    K1 = pi / 2 * (lib.atanh(k) / k) ** (num(3) / 4)
    K2 = (1 + kp2 / 4) * log(4 / kp) - kp2 / 4
    K3 = pi / 2 * (num(3) / 4 * log(kp) / (kp - 1) + 1 / (2 * (1 + kp)))
    K4 = log(4 / kp + (e_half_pi - 4) * kp ** gamma)
    K5 = (1 + kp2 / 4) * log(4 / kp)
    E1 = pi / 2 * ((1 + kp ** (num(3) / 2)) / 2) ** (num(2) / 3)
    E2 = pi / 2 * ((1 + kp ** delta) / 2) ** (1 / delta)
    return K1, K2, K3, K4, K5, E1, E2


def ke_bounds(k: ModulusLike) -> KEBounds:
    """Elementary lower/upper bounds for K(k) and E(k)."""
    mod = as_modulus(k)
    return KEBounds(*_ke_formulas(mod.k, mod.k_prime, math))


def ke_bounds_mp(k, k_prime=None, dps: int = 50) -> tuple:
    """The same seven values in ``dps``-digit arithmetic, for checks where the
    bound and K(k) agree beyond double precision (k -> 0)."""
    import mpmath

    with mpmath.workdps(dps):
        k = mpmath.mpf(k)
        kp = mpmath.sqrt((1 - k) * (1 + k)) if k_prime is None else mpmath.mpf(k_prime)
        return _ke_formulas(k, kp, mpmath)


def ub_elementary(ip: IntervalPair) -> float:
    """Main bound with E/K replaced by E2 / max(K1, K2): elementary in alpha, beta."""
    canon, _ = ip.canonical()
    mod = Modulus.from_squares(*modulus_squares(canon))
    b = ke_bounds(mod)
    return ub_main_rewritten(canon, E_over_K=b.E2 / b.K_lower)


def bounds_report(ip: IntervalPair) -> BoundsReport:
    canon, flipped = ip.canonical()
    value, delta = lb_solynin(canon)
    return BoundsReport(
        lb_symmetric=lb_symmetric(canon),
        lb_pommerenke=lb_pommerenke(canon),
        lb_elementary=lb_elementary(canon),
        lb_solynin=value,
        lb_solynin_delta=delta,
        ub_reflection=ub_reflection(canon),
        ub_unit=0.5,
        ub_gillis=ub_gillis(canon),
        ub_main=ub_main(canon),
        ub_elementary=ub_elementary(canon),
        reflected=flipped,
    )
