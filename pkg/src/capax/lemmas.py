"""Grid verification of the auxiliary inequalities for elliptic and theta functions.

Each ``check_*`` function evaluates one family of inequalities on a grid and
returns a :class:`LemmaResult` carrying the largest violation seen and the
grid point where it occurred.  A violation is the amount by which the side
that should be smaller exceeds the other side, so ``<= 0`` means satisfied.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .bounds import ke_bounds, ke_bounds_mp
from .elliptic import (
    EPS,
    Modulus,
    complete_E,
    complete_K,
    jacobi_sncndn,
    jacobi_zn,
    theta_quad,
)

# relative rounding allowance for inequalities that are tight somewhere on the grid
ROUND_SLACK = 64 * EPS
FD_STEP = 1e-5
FD_SLACK = 1e-9
CLOSED_FORM_RTOL = 1e-10
CROSSOVER_TARGETS = {"K1/K2": 0.888, "K3/K4": 0.971, "K4/K5": 0.990}
CROSSOVER_TOL = 0.002


@dataclass
class LemmaResult:
    name: str
    max_violation: float
    worst: dict
    passed: bool
    notes: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = ", ".join(f"{k}={v:.6g}" for k, v in self.worst.items())
        return f"{status} {self.name}: max violation {self.max_violation:.3e} at ({where})"


class _Tracker:
    """Keeps the worst violation across grid slices."""

    def __init__(self):
        self.value = -math.inf
        self.worst: dict = {}

    def update(self, viol: np.ndarray, **coords):
        viol = np.asarray(viol, dtype=float)
        i = int(np.nanargmax(viol))
        if viol.flat[i] > self.value:
            self.value = float(viol.flat[i])
            self.worst = {k: float(np.broadcast_to(v, viol.shape).flat[i]) for k, v in coords.items()}


def modulus_grid(n_k: int) -> np.ndarray:
    return np.linspace(0.05, 0.995, n_k)


def check_lemma1(n_k: int = 20) -> LemmaResult:
    """Theta, Theta1, H and H1 at K/2 against their closed forms, and dn(K/2) = sqrt(k')."""
    tr = _Tracker()
    for k in modulus_grid(n_k):
        mod = Modulus.from_k(k)
        K, kp = complete_K(mod), mod.k_prime
        t = theta_quad(0.5 * K, mod)
        base = 2.0 / math.pi ** 2 * K * K * math.sqrt(kp)
        th_ref = (base * (1.0 + kp)) ** 0.25
        h_ref = (base * (1.0 - kp)) ** 0.25
        errs = np.array([
            abs(t.theta / th_ref - 1.0),
            abs(t.theta1 / th_ref - 1.0),
            abs(t.h / h_ref - 1.0),
            abs(t.h1 / h_ref - 1.0),
            abs(jacobi_sncndn(0.5 * K, mod).dn / math.sqrt(kp) - 1.0),
        ])
        tr.update(errs - CLOSED_FORM_RTOL, k=k)
    return LemmaResult("Lemma 1 (theta values at K/2)", tr.value, tr.worst, tr.value <= 0.0)


def dn2_theta4(u, mod: Modulus):
    return jacobi_sncndn(u, mod).dn ** 2 * theta_quad(u, mod).theta ** 4


def check_lemma2(n_u: int = 200, n_k: int = 20) -> LemmaResult:
    """dn^2 Theta^4 strictly increasing on [0, K/2]."""
    tr = _Tracker()
    notes = []
    fd_worst = -math.inf
    for k in modulus_grid(n_k):
        mod = Modulus.from_k(k)
        K = complete_K(mod)
        u = np.linspace(0.0, 0.5 * K, n_u)
        f = dn2_theta4(u, mod)
        # strict increase: every step must go up
        tr.update(-np.diff(f), k=k, u=u[1:])
        h = FD_STEP * K
        ui = u[1:-1]
        deriv = (dn2_theta4(ui + h, mod) - dn2_theta4(ui - h, mod)) / (2.0 * h)
        fd_worst = max(fd_worst, float(np.max(-deriv - FD_SLACK)))
    passed = tr.value < 0.0 and fd_worst <= 0.0
    notes.append(f"finite-difference derivative check: worst {fd_worst:.3e}")
    return LemmaResult("Lemma 2 (dn^2 Theta^4 increasing)", tr.value, tr.worst, passed, notes)


def check_lemma3(n_u: int = 200, n_k: int = 20, dk: float = 1e-4) -> LemmaResult:
    """At fixed u < K(k1): cn(u, k2) > cn(u, k1) and dn(u, k2) < dn(u, k1) for k2 = k1 + dk."""
    tr = _Tracker()
    for k1 in modulus_grid(n_k):
        m1, m2 = Modulus.from_k(k1), Modulus.from_k(k1 + dk)
        u = np.linspace(0.05, 0.99, n_u) * complete_K(m1)
        a, b = jacobi_sncndn(u, m1), jacobi_sncndn(u, m2)
        tr.update(a.cn - b.cn, k=k1, u=u)
        tr.update(b.dn - a.dn, k=k1, u=u)
    return LemmaResult("Lemma 3 (cn up, dn down in k)", tr.value, tr.worst, tr.value < 0.0)


def check_lemma5(n_u: int = 200, n_k: int = 20, extra=None) -> LemmaResult:
    """1/dn <= cosh u <= 1/cn and log((1+k sn)/dn) <= u <= log((1+sn)/cn) for 0 < u < 0.95K.

    ``extra`` is an optional array of additional (u/K, k) rows.
    """
    tr = _Tracker()
    pts = [(np.linspace(0.0, 0.95, n_u + 1)[1:], k) for k in modulus_grid(n_k)]
    if extra is not None:
        pts += [(np.array([t]), k) for t, k in extra]
    for t, k in pts:
        mod = Modulus.from_k(k)
        u = t * complete_K(mod)
        j = jacobi_sncndn(u, mod)
        ch = np.cosh(u)
        tr.update((1.0 / j.dn - ch) / ch - ROUND_SLACK, k=k, u=u)
        tr.update((ch - 1.0 / j.cn) / ch - ROUND_SLACK, k=k, u=u)
        lo = np.log((1.0 + k * j.sn) / j.dn)
        hi = np.log((1.0 + j.sn) / j.cn)
        tr.update((lo - u) / u - ROUND_SLACK, k=k, u=u)
        tr.update((u - hi) / u - ROUND_SLACK, k=k, u=u)
    return LemmaResult("Lemma 5 (cosh sandwich and log form)", tr.value, tr.worst, tr.value <= 0.0)


def check_lemma6(n_u: int = 200, n_k: int = 20, extra=None) -> LemmaResult:
    """zn(u) <= (E - k'^2 K)(1 - u/K) on [0, K]."""
    tr = _Tracker()
    pts = [(np.linspace(0.0, 1.0, n_u), k) for k in modulus_grid(n_k)]
    if extra is not None:
        pts += [(np.array([t]), k) for t, k in extra]
    for t, k in pts:
        mod = Modulus.from_k(k)
        K, E = complete_K(mod), complete_E(mod)
        u = t * K
        bound = (E - mod.k_prime ** 2 * K) * (1.0 - t)
        # absolute rounding allowance: both sides vanish at u = K
        tr.update(jacobi_zn(u, mod) - bound - ROUND_SLACK * K, k=k, u=u)
    return LemmaResult("Lemma 6 (zeta function bound)", tr.value, tr.worst, tr.value <= 0.0)


def check_lemma7(n_l: int = 200, n_k: int = 20) -> LemmaResult:
    """Theta(0)/Theta(lambda K) <= sqrt(k') exp((E/K - k'^2)(1-lambda)^2 K^2 / 2), 0 <= lambda <= 1."""
    tr = _Tracker()
    lam = np.linspace(0.0, 1.0, n_l)
    for k in modulus_grid(n_k):
        mod = Modulus.from_k(k)
        K, E, kp = complete_K(mod), complete_E(mod), mod.k_prime
        th = theta_quad(np.concatenate([[0.0], lam * K]), mod).theta
        lhs = th[0] / th[1:]
        rhs = math.sqrt(kp) * np.exp(0.5 * (E / K - kp * kp) * (1.0 - lam) ** 2 * K * K)
        tr.update(lhs / rhs - 1.0 - ROUND_SLACK, k=k, lam=lam)
    return LemmaResult("Lemma 7 (theta ratio bound)", tr.value, tr.worst, tr.value <= 0.0)


def lemma4_k_values(n: int) -> np.ndarray:
    """n distinct moduli strictly inside (1e-6, 1 - 1e-6), dense towards both ends."""
    half = n // 2
    low = np.geomspace(1e-6, 0.5, half + 1)[1:]
    high = 1.0 - np.geomspace(1e-6, 0.5, n - half + 2)[1:-1][::-1]
    return np.concatenate([low, high])


def locate_crossovers() -> dict[str, float]:
    """Moduli where the active elementary K bound switches."""

    def diff(a, b):
        return lambda k: getattr(ke_bounds(k), a) - getattr(ke_bounds(k), b)

    return {
        "K1/K2": bisect(diff("K1", "K2"), 0.80, 0.95, xtol=1e-12),
        "K3/K4": bisect(diff("K3", "K4"), 0.95, 0.985, xtol=1e-12),
        "K4/K5": bisect(diff("K4", "K5"), 0.985, 0.999, xtol=1e-12),
    }


def check_lemma4(n_k: int = 10_000, dps: int = 80) -> LemmaResult:
    """max(K1,K2) < K < min(K3,K4,K5) and E1 < E < E2, plus the crossover locations.

    The strict inequalities are decided in ``dps``-digit arithmetic: as k -> 0
    several bounds agree with K(k) or E(k) to far more than 16 digits.  The
    double-precision values returned by :func:`ke_bounds` and the library's
    K and E are checked to rounding accuracy.
    """
    import mpmath

    tr = _Tracker()
    notes = []
    double_worst = -math.inf
    with mpmath.workdps(dps):
        for k in lemma4_k_values(n_k):
            K1, K2, K3, K4, K5, E1, E2 = ke_bounds_mp(k, dps=dps)
            m = mpmath.mpf(k) ** 2
            K, E = mpmath.ellipk(m), mpmath.ellipe(m)
            gaps = [max(K1, K2) - K, K - min(K3, K4, K5), E1 - E, E - E2]
            # strictly negative means satisfied; rescale to a float for reporting
            viol = max(float(g / K) for g in gaps)
            if viol > tr.value:
                tr.value, tr.worst = viol, {"k": float(k)}
            b = ke_bounds(k)
            Kd, Ed = complete_K(k), complete_E(k)
            double_worst = max(double_worst, (b.K_lower - Kd) / Kd, (Kd - b.K_upper) / Kd,
                               (b.E1 - Ed) / Ed, (Ed - b.E2) / Ed)
    double_ok = double_worst <= 4 * EPS
    notes.append(f"double-precision sandwich: worst relative excess {double_worst:.3e}")
    cross = locate_crossovers()
    cross_ok = True
    for name, where in cross.items():
        ok = abs(where - CROSSOVER_TARGETS[name]) <= CROSSOVER_TOL
        cross_ok &= ok
        notes.append(f"crossover {name} at k={where:.6f} ({'ok' if ok else 'off'}; expected {CROSSOVER_TARGETS[name]})")
    passed = tr.value < 0.0 and double_ok and cross_ok
    return LemmaResult("Lemma 4 (elementary K and E bounds)", tr.value, tr.worst, passed, notes)


def run_all(n_u: int = 200, n_k: int = 20, n_lemma4: int = 10_000, seed: int | None = None,
            n_random: int = 0) -> list[LemmaResult]:
    """Every lemma check, in order 1..7.

    With ``n_random > 0`` the Lemma 5 and 6 grids are augmented with that many
    random (u/K, k) points drawn from ``numpy.random.default_rng(seed)``.
    """
    extra = None
    if n_random:
        rng = np.random.default_rng(seed)
        extra = np.column_stack([rng.uniform(0.01, 0.95, n_random), rng.uniform(0.01, 0.995, n_random)])
    return [
        check_lemma1(n_k),
        check_lemma2(n_u, n_k),
        check_lemma3(n_u, n_k),
        check_lemma4(n_lemma4),
        check_lemma5(n_u, n_k, extra),
        check_lemma6(n_u, n_k, extra),
        check_lemma7(n_u, n_k),
    ]
