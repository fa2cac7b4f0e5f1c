"""Double-precision elliptic integrals, Jacobi elliptic, theta and zeta functions.

Only real arguments and moduli 0 < k < 1 are supported.  Every function that
takes a modulus accepts either a float ``k`` or a :class:`Modulus`; pass a
:class:`Modulus` built with :meth:`Modulus.from_k_prime` when the
complementary modulus is known more accurately than ``k`` itself (k close
to 1).

Theta functions use Jacobi's old notation.  With ``v = pi*u/(2K)`` and nome
``q = exp(-pi*K'/K)`` the dictionary to the modern functions is::

    Theta(u)  = theta_4(v, q)        H(u)  = theta_1(v, q)
    Theta1(u) = theta_3(v, q)        H1(u) = theta_2(v, q)

so that ``Theta(0)**2 = 2k'K/pi`` and ``Theta1(0)**2 = 2K/pi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError

EPS = np.finfo(float).eps

AGM_RTOL = 1e-16
AGM_MAX_ITER = 40
# below this k (or k') the closed-form limits are used instead of the AGM
DEGENERATE = 1e-8
# above this nome the Poisson-summed (imaginary transformed) series is used
NOME_SWITCH = 0.5
SERIES_TOL = 1e-16


@dataclass(frozen=True)
class Modulus:
    """Elliptic modulus ``k`` with its complement ``k' = sqrt(1 - k**2)``."""

    k: float
    k_prime: float
    m: float = field(init=False)

    def __post_init__(self):
        k, kp = self.k, self.k_prime
        if not (0.0 < k <= 1.0 and 0.0 < kp <= 1.0):
            raise DomainError(f"modulus must satisfy 0 < k < 1, got k={k!r}, k'={kp!r}")
        if abs(k * k + kp * kp - 1.0) > 4 * EPS:
            raise DomainError(f"k**2 + k'**2 != 1 for k={k!r}, k'={kp!r}")
        object.__setattr__(self, "m", k * k)

    @classmethod
    def from_k(cls, k: float) -> "Modulus":
        k = float(k)
        if not 0.0 < k < 1.0:
            raise DomainError(f"modulus k must lie in (0, 1), got {k!r}")
        return cls(k, math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_k_prime(cls, k_prime: float) -> "Modulus":
        kp = float(k_prime)
        if not 0.0 < kp < 1.0:
            raise DomainError(f"complementary modulus k' must lie in (0, 1), got {kp!r}")
        return cls(math.sqrt((1.0 - kp) * (1.0 + kp)), kp)

    @classmethod
    def from_squares(cls, m: float, m_prime: float) -> "Modulus":
        """Build from independently computed ``k**2`` and ``k'**2``.

        The smaller of the two is trusted and the other derived from it.
        """
        if not (0.0 < m < 1.0 and 0.0 < m_prime < 1.0):
            raise DomainError(f"k**2={m!r} and k'**2={m_prime!r} must lie in (0, 1)")
        if m <= m_prime:
            return cls.from_k(math.sqrt(m))
        return cls.from_k_prime(math.sqrt(m_prime))

    def complement(self) -> "Modulus":
        return Modulus(self.k_prime, self.k)


ModulusLike = Union[float, Modulus]


def as_modulus(k: ModulusLike) -> Modulus:
    if isinstance(k, Modulus):
        return k
    return Modulus.from_k(k)


@dataclass(frozen=True)
class EllipticPair:
    K: float
    K_prime: float
    E: float
    E_prime: float

    def legendre_residual(self) -> float:
        return self.E * self.K_prime + self.E_prime * self.K - self.K * self.K_prime - math.pi / 2


@dataclass(frozen=True)
class JacobiTriple:
    sn: np.ndarray | float
    cn: np.ndarray | float
    dn: np.ndarray | float


@dataclass(frozen=True)
class ThetaQuad:
    """Old-notation theta values ``Theta, H, H1, Theta1`` at one (or many) u."""

    theta: np.ndarray | float
    h: np.ndarray | float
    h1: np.ndarray | float
    theta1: np.ndarray | float
    q: float


def _agm_sequence(kp: float, k: float):
    """Descending Landen / AGM sequences ``a_n`` and ``c_n`` started at (1, k', k)."""
    a, b, c = 1.0, kp, k
    avals, cvals = [a], [c]
    for _ in range(AGM_MAX_ITER):
        if abs(a - b) < AGM_RTOL * a or c < EPS * a:
            break
        a_next = 0.5 * (a + b)
        b = math.sqrt(a * b)
        c = c * c / (4.0 * a_next)
        a = a_next
        avals.append(a)
        cvals.append(c)
    return avals, cvals


def complete_K(k: ModulusLike) -> float:
    """Complete elliptic integral of the first kind K(k)."""
    mod = as_modulus(k)
    if mod.k < DEGENERATE:
        return 0.5 * math.pi * (1.0 + 0.25 * mod.m)
    if mod.k_prime < DEGENERATE:
        big = math.log(4.0 / mod.k_prime)
        return big + 0.25 * mod.k_prime ** 2 * (big - 1.0)
    avals, _ = _agm_sequence(mod.k_prime, mod.k)
    return math.pi / (2.0 * avals[-1])


def complete_E(k: ModulusLike) -> float:
    """Complete elliptic integral of the second kind E(k)."""
    mod = as_modulus(k)
    if mod.k < DEGENERATE:
        return 0.5 * math.pi * (1.0 - 0.25 * mod.m)
    if mod.k_prime < DEGENERATE:
        kp2 = mod.k_prime ** 2
        return 1.0 + 0.5 * kp2 * (math.log(4.0 / mod.k_prime) - 0.5)
    avals, cvals = _agm_sequence(mod.k_prime, mod.k)
    s = math.fsum(2.0 ** (n - 1) * c * c for n, c in enumerate(cvals))
    return math.pi / (2.0 * avals[-1]) * (1.0 - s)


def complete_K_prime(k: ModulusLike) -> float:
    return complete_K(as_modulus(k).complement())


def elliptic_pair(k: ModulusLike) -> EllipticPair:
    mod = as_modulus(k)
    comp = mod.complement()
    return EllipticPair(complete_K(mod), complete_K(comp), complete_E(mod), complete_E(comp))


def nome(k: ModulusLike) -> float:
    """Jacobi nome ``q = exp(-pi K'/K)``."""
    mod = as_modulus(k)
    if mod.k < DEGENERATE:
        return mod.m / 16.0
    return math.exp(-math.pi * complete_K_prime(mod) / complete_K(mod))


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral R_F by duplication (at most one argument zero)."""
    errtol = 0.0008
    for _ in range(100):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * (sy + sz) + sy * sz
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        ave = (x + y + z) / 3.0
        dx, dy, dz = (ave - x) / ave, (ave - y) / ave, (ave - z) / ave
        if max(abs(dx), abs(dy), abs(dz)) < errtol:
            break
    e2 = dx * dy - dz * dz
    e3 = dx * dy * dz
    return (1.0 + (e2 / 24.0 - 0.1 - 3.0 / 44.0 * e3) * e2 + e3 / 14.0) / math.sqrt(ave)


def _F_from_sin_cos(s: float, c: float, kp2: float) -> float:
    # F(phi) with sin(phi)=s, cos(phi)=c; 1 - k^2 s^2 written as c^2 + k'^2 s^2
    if s == 0.0:
        return 0.0
    return s * carlson_rf(c * c, c * c + kp2 * s * s, 1.0)


def incomplete_F(phi: float, k: ModulusLike) -> float:
    """Incomplete elliptic integral of the first kind F(phi, k), 0 <= phi <= pi/2.

    Unlike the other functions, ``k = 0`` is accepted here (F(phi, 0) = phi).
    """
    if not 0.0 <= phi <= 0.5 * math.pi:
        raise DomainError(f"phi must lie in [0, pi/2], got {phi!r}")
    if isinstance(k, Modulus):
        kp2 = k.k_prime ** 2
    else:
        if not 0.0 <= k < 1.0:
            raise DomainError(f"modulus k must lie in [0, 1), got {k!r}")
        kp2 = (1.0 - k) * (1.0 + k)
    c = 0.0 if phi == 0.5 * math.pi else math.cos(phi)
    return _F_from_sin_cos(math.sin(phi), c, kp2)


def inverse_sn(x: float, k: ModulusLike, cn: float | None = None) -> float:
    """Return ``u`` in [0, K] with ``sn(u, k) = x``.

    ``cn``, if given, is taken as ``sqrt(1 - x**2)`` and avoids the
    cancellation in forming it when x is close to 1.
    """
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"sn value must lie in [0, 1], got {x!r}")
    mod = as_modulus(k)
    if cn is None:
        cn = math.sqrt((1.0 - x) * (1.0 + x))
    return _F_from_sin_cos(x, cn, mod.k_prime ** 2)


def jacobi_sncndn(u, k: ModulusLike) -> JacobiTriple:
    """Jacobi elliptic functions sn, cn, dn by descending Landen transformation.

    ``u`` may be a scalar or an array; the result fields have the same shape.
    """
    mod = as_modulus(k)
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    if mod.k < DEGENERATE:
        s, c = np.sin(u), np.cos(u)
        t = 0.25 * mod.m * (u - s * c)
        sn, cn, dn = s - t * c, c + t * s, 1.0 - 0.5 * mod.m * s * s
    else:
        avals, cvals = _agm_sequence(mod.k_prime, mod.k)
        n = len(avals) - 1
        phi = 2.0 ** n * avals[-1] * u
        for j in range(n, 0, -1):
            phi = 0.5 * (phi + np.arcsin(np.clip(cvals[j] / avals[j] * np.sin(phi), -1.0, 1.0)))
        sn, cn = np.sin(phi), np.cos(phi)
        # dn^2 = k'^2 + k^2 cn^2 has no cancellation
        dn = np.sqrt(mod.k_prime ** 2 + mod.m * cn * cn)
    if scalar:
        return JacobiTriple(float(sn), float(cn), float(dn))
    return JacobiTriple(sn, cn, dn)


def _series_terms(q: float, tol: float) -> int:
    # smallest N with q**(N**2) below tol; the half-integer series decay faster
    if q == 0.0:
        return 1
    return int(math.ceil(math.sqrt(math.log(tol) / math.log(q)))) + 1


def _theta_direct(u: np.ndarray, K: float, q: float, tol: float):
    v = 0.5 * math.pi * u / K
    N = _series_terms(q, tol)
    n = np.arange(1, N + 1)
    qn = q ** (n.astype(float) ** 2)
    sign = (-1.0) ** n
    cos_even = np.cos(2.0 * np.multiply.outer(v, n))
    theta = 1.0 + 2.0 * (cos_even * (sign * qn)).sum(axis=-1)
    theta1 = 1.0 + 2.0 * (cos_even * qn).sum(axis=-1)
    m = np.arange(0, N + 1)
    qh = q ** ((m + 0.5) ** 2)
    odd = np.multiply.outer(v, 2 * m + 1)
    h = 2.0 * (np.sin(odd) * ((-1.0) ** m * qh)).sum(axis=-1)
    h1 = 2.0 * (np.cos(odd) * qh).sum(axis=-1)
    return theta, h, h1, theta1


def _reduce_period(u: np.ndarray, K: float):
    """Write u = r + 2jK with r in [-K, K); return r and (-1)**j."""
    j = np.floor((u + K) / (2.0 * K))
    r = u - 2.0 * j * K
    return r, np.where(np.mod(j, 2) == 0, 1.0, -1.0)


def _poisson_weights(r: np.ndarray, K: float, Kp: float, tol: float):
    # Gaussian sums centred at multiples of K: the imaginary transformation
    # of the q-series, convergent like exp(-pi K/K' n^2)
    c = 0.25 * math.pi / (K * Kp)
    span = int(math.ceil(math.sqrt(-math.log(tol) / (c * K * K)))) + 2
    centres = np.arange(-span, span + 1)
    d = np.subtract.outer(r, centres * K)
    return centres, d, np.exp(-c * d * d), c


def _theta_transformed(u: np.ndarray, K: float, Kp: float, tol: float):
    r, sgn = _reduce_period(u, K)
    centres, _, w, _ = _poisson_weights(r, K, Kp, tol)
    pref = math.sqrt(K / Kp)
    odd = (centres % 2) == 1
    alt = np.where(((centres - (centres % 2)) // 2) % 2 == 0, 1.0, -1.0)
    theta = pref * w[..., odd].sum(axis=-1)
    theta1 = pref * w[..., ~odd].sum(axis=-1)
    h = pref * (w[..., odd] * alt[odd]).sum(axis=-1) * sgn
    h1 = pref * (w[..., ~odd] * alt[~odd]).sum(axis=-1) * sgn
    return theta, h, h1, theta1


def theta_quad(u, k: ModulusLike, tol: float = SERIES_TOL) -> ThetaQuad:
    """The four old-notation theta functions at ``u`` (scalar or array)."""
    mod = as_modulus(k)
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    K = complete_K(mod)
    q = nome(mod)
    if q <= NOME_SWITCH:
        vals = _theta_direct(u, K, q, tol)
    else:
        vals = _theta_transformed(u, K, complete_K_prime(mod), tol)
    if scalar:
        vals = tuple(float(x) for x in vals)
    return ThetaQuad(*vals, q=q)


def jacobi_zn(u, k: ModulusLike, tol: float = SERIES_TOL):
    """Jacobi's zeta function ``Theta'(u)/Theta(u)`` from the differentiated series."""
    mod = as_modulus(k)
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    K = complete_K(mod)
    q = nome(mod)
    if q <= NOME_SWITCH:
        v = 0.5 * math.pi * u / K
        N = _series_terms(q, tol)
        n = np.arange(1, N + 1)
        coef = (-1.0) ** n * q ** (n.astype(float) ** 2)
        arg = 2.0 * np.multiply.outer(v, n)
        num = -4.0 * (np.sin(arg) * (n * coef)).sum(axis=-1)
        den = 1.0 + 2.0 * (np.cos(arg) * coef).sum(axis=-1)
        zn = 0.5 * math.pi / K * num / den
    else:
        r, _ = _reduce_period(u, K)
        centres, d, w, c = _poisson_weights(r, K, complete_K_prime(mod), tol)
        odd = (centres % 2) == 1
        zn = (-2.0 * c * d[..., odd] * w[..., odd]).sum(axis=-1) / w[..., odd].sum(axis=-1)
    return float(zn) if scalar else zn


def jacobi_epsilon(u, k: ModulusLike, tol: float = SERIES_TOL):
    """Incomplete integral of the second kind in amplitude-free form, int_0^u dn^2."""
    mod = as_modulus(k)
    return jacobi_zn(u, mod, tol) + u * (complete_E(mod) / complete_K(mod))
