import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad, solve_ivp

from capax.elliptic import (
    Modulus,
    _theta_direct,
    _theta_transformed,
    complete_E,
    complete_K,
    complete_K_prime,
    elliptic_pair,
    incomplete_F,
    inverse_sn,
    jacobi_epsilon,
    jacobi_sncndn,
    jacobi_zn,
    nome,
    theta_quad,
)
from capax.errors import DomainError

# k for the pair (-0.1, 0.3): k^2 = 0.8 / 1.43
K_PAIR = math.sqrt(0.8 / 1.43)
# 50-digit AGM run to twice the needed iteration count
K_PAIR_K = 1.9080024530759431633
K_PAIR_E = 1.3200815801844678641
# DOP853 integration of sn' = cn dn, cn' = -sn dn, dn' = -k^2 sn cn to u = 0.8, k = 0.6
ODE_SNCNDN = (0.6983857213789642, 0.7157215828616493, 0.9079717277000613)


def mp_agm_KE(k, iterations=80):
    with mpmath.workdps(50):
        k = mpmath.mpf(k)
        a, b, c = mpmath.mpf(1), mpmath.sqrt(1 - k * k), k
        s, p = c * c / 2, mpmath.mpf(1)
        for _ in range(iterations):
            a, b, c = (a + b) / 2, mpmath.sqrt(a * b), (a - b) / 2
            p *= 2
            s += p / 2 * c * c
        K = mpmath.pi / (2 * a)
        return float(K), float(K * (1 - s))


class TestModulus:
    def test_complement(self):
        m = Modulus.from_k(0.6)
        assert m.k_prime == pytest.approx(0.8, rel=1e-15)
        assert m.complement().k == m.k_prime

    @pytest.mark.parametrize("k", [0.0, 1.0, -0.2, 1.5])
    def test_rejects_endpoints(self, k):
        with pytest.raises(DomainError):
            Modulus.from_k(k)

    def test_from_k_prime_keeps_small_complement(self):
        m = Modulus.from_k_prime(1e-7)
        assert m.k_prime == 1e-7
        assert abs(m.k ** 2 + m.k_prime ** 2 - 1.0) <= 4 * np.finfo(float).eps


class TestCompleteIntegrals:
    def test_K_small_k_limit(self):
        assert complete_K(1e-12) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_E_limits(self):
        assert complete_E(1e-12) == pytest.approx(math.pi / 2, rel=1e-15)
        assert complete_E(Modulus.from_k_prime(1e-12)) == pytest.approx(1.0, abs=1e-20 + 1e-22)
        assert complete_E(Modulus.from_k_prime(1e-6)) == pytest.approx(1.0, abs=1e-10)

    def test_self_dual_point(self):
        k = 1 / math.sqrt(2)
        assert complete_K(k) == pytest.approx(complete_K_prime(k), rel=1e-14)

    def test_pinned_pair_modulus(self):
        assert mp_agm_KE(K_PAIR) == pytest.approx((K_PAIR_K, K_PAIR_E), rel=1e-16)
        assert complete_K(K_PAIR) == pytest.approx(K_PAIR_K, rel=1e-14)
        assert complete_E(K_PAIR) == pytest.approx(K_PAIR_E, rel=1e-14)

    @pytest.mark.parametrize("k", [1e-7, 1e-3, 0.1, 0.3, 0.5, 0.9, 0.99, 0.999999])
    def test_against_mpmath(self, k):
        with mpmath.workdps(40):
            m = mpmath.mpf(k) ** 2
            ref_K, ref_E = float(mpmath.ellipk(m)), float(mpmath.ellipe(m))
        assert complete_K(k) == pytest.approx(ref_K, rel=1e-14)
        assert complete_E(k) == pytest.approx(ref_E, rel=1e-14)

    def test_near_one_via_complement(self):
        kp = 1e-9
        with mpmath.workdps(40):
            ref = mpmath.ellipk(1 - mpmath.mpf(kp) ** 2)
        assert complete_K(Modulus.from_k_prime(kp)) == pytest.approx(float(ref), rel=1e-14)

    def test_legendre_at_03(self):
        assert abs(elliptic_pair(0.3).legendre_residual()) < 1e-12

    def test_legendre_log_spaced(self):
        for k in np.geomspace(1e-6, 1 - 1e-6, 100):
            assert abs(elliptic_pair(k).legendre_residual()) < 1e-12

    def test_monotone_and_E_above_kp2K(self):
        ks = np.linspace(0.01, 0.99, 99)
        K = np.array([complete_K(k) for k in ks])
        E = np.array([complete_E(k) for k in ks])
        assert np.all(np.diff(K) > 0) and np.all(np.diff(E) < 0)
        assert np.all(E < K)
        assert np.all(E - (1 - ks ** 2) * K > 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            complete_K(1.0)
        with pytest.raises(DomainError):
            complete_E(0.0)


class TestIncompleteF:
    def test_zero(self):
        assert incomplete_F(0.0, 0.5) == 0.0

    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 0.999])
    def test_quarter_period(self, k):
        assert incomplete_F(math.pi / 2, k) == pytest.approx(complete_K(k), abs=1e-13)

    def test_zero_modulus(self):
        assert incomplete_F(0.7, 0.0) == pytest.approx(0.7, abs=1e-15)

    def test_against_mpmath(self):
        for phi in [0.1, 0.7, 1.3]:
            assert incomplete_F(phi, 0.8) == pytest.approx(float(mpmath.ellipf(phi, 0.64)), rel=1e-14)

    def test_increasing(self):
        vals = [incomplete_F(p, 0.7) for p in np.linspace(0, math.pi / 2, 50)]
        assert np.all(np.diff(vals) > 0)

    @pytest.mark.parametrize("phi", [-0.1, 2.0])
    def test_domain(self, phi):
        with pytest.raises(DomainError):
            incomplete_F(phi, 0.5)


class TestInverseSn:
    def test_endpoints(self):
        assert inverse_sn(0.0, 0.5) == 0.0
        assert inverse_sn(1.0, 0.5) == pytest.approx(complete_K(0.5), abs=1e-14)

    def test_round_trip(self):
        u = inverse_sn(0.63, 0.5)
        assert jacobi_sncndn(u, 0.5).sn == pytest.approx(0.63, abs=1e-12)

    @given(st.floats(0.0, 1.0), st.floats(0.01, 0.999))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_property(self, x, k):
        assert jacobi_sncndn(inverse_sn(x, k), k).sn == pytest.approx(x, abs=1e-12)

    @pytest.mark.parametrize("x", [-0.01, 1.01])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            inverse_sn(x, 0.5)


class TestJacobiFunctions:
    def test_trig_degeneration(self):
        t = jacobi_sncndn(0.5, 1e-10)
        assert t.sn == pytest.approx(math.sin(0.5), abs=1e-15)
        assert t.cn == pytest.approx(math.cos(0.5), abs=1e-15)
        assert t.dn == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 0.9999])
    def test_quarter_period_values(self, k):
        K = complete_K(k)
        t = jacobi_sncndn(K, k)
        kp = math.sqrt(1 - k * k)
        assert t.sn == pytest.approx(1.0, abs=1e-14)
        assert t.cn == pytest.approx(0.0, abs=1e-14)
        assert t.dn == pytest.approx(kp, rel=1e-12)

    @pytest.mark.parametrize("k", [0.2, 0.6, 0.95])
    def test_half_quarter_period_dn(self, k):
        assert jacobi_sncndn(complete_K(k) / 2, k).dn == pytest.approx(math.sqrt(math.sqrt(1 - k * k)), rel=1e-13)

    def test_ode_oracle(self):
        k = 0.6
        sol = solve_ivp(lambda t, y: [y[1] * y[2], -y[0] * y[2], -k * k * y[0] * y[1]],
                        [0, 0.8], [0, 1, 1], method="DOP853", rtol=1e-13, atol=1e-15)
        assert sol.y[:, -1] == pytest.approx(ODE_SNCNDN, abs=1e-12)
        t = jacobi_sncndn(0.8, k)
        assert (t.sn, t.cn, t.dn) == pytest.approx(ODE_SNCNDN, abs=1e-12)

    def test_pythagorean_random(self):
        rng = np.random.default_rng(7)
        for _ in range(500):
            k = rng.uniform(1e-4, 1 - 1e-6)
            u = rng.uniform(0, complete_K(k))
            t = jacobi_sncndn(u, k)
            assert abs(t.sn ** 2 + t.cn ** 2 - 1) < 1e-13
            assert abs(t.dn ** 2 + k * k * t.sn ** 2 - 1) < 1e-13

    def test_vectorised_matches_scalar(self):
        u = np.linspace(0, 3, 7)
        vec = jacobi_sncndn(u, 0.7)
        for i, x in enumerate(u):
            s = jacobi_sncndn(float(x), 0.7)
            assert vec.sn[i] == s.sn and vec.cn[i] == s.cn and vec.dn[i] == s.dn

    @pytest.mark.parametrize("k", [0.3, 0.8, 0.999])
    def test_against_mpmath_over_two_periods(self, k):
        K = complete_K(k)
        for u in np.linspace(0, 2 * K, 9):
            t = jacobi_sncndn(u, k)
            with mpmath.workdps(40):
                m = mpmath.mpf(k) ** 2
                ref = [float(mpmath.ellipfun(f, u, m=m)) for f in ("sn", "cn", "dn")]
            assert (t.sn, t.cn, t.dn) == pytest.approx(ref, abs=1e-14)


def duplication_residuals(u, k):
    t, z, d = theta_quad(u, k), theta_quad(0.0, k), theta_quad(2 * u, k)
    return [
        d.h * z.theta * z.h1 * z.theta1 - 2 * t.h * t.theta * t.h1 * t.theta1,
        d.h1 * z.h1 * z.theta ** 2 - (t.theta ** 2 * t.h1 ** 2 - t.h ** 2 * t.theta1 ** 2),
        d.theta1 * z.theta1 * z.theta ** 2 - (t.theta ** 2 * t.theta1 ** 2 - t.h ** 2 * t.h1 ** 2),
        d.theta * z.theta ** 3 - (t.theta1 ** 4 - t.h1 ** 4),
        d.theta * z.theta ** 3 - (t.theta ** 4 - t.h ** 4),
    ]


class TestTheta:
    def test_small_nome_limit(self):
        for u in [0.0, 0.4, 1.3]:
            t = theta_quad(u, 1e-9)
            assert t.theta == pytest.approx(1.0, abs=1e-15)
            assert t.theta1 == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize("k", [0.05, 0.5, 0.9, 0.999, 1 - 1e-7])
    def test_half_period_closed_forms(self, k):
        mod = Modulus.from_k(k)
        K, kp = complete_K(mod), mod.k_prime
        t = theta_quad(K / 2, mod)
        th = (2 * (1 + kp) * K ** 2 * math.sqrt(kp) / math.pi ** 2) ** 0.25
        h = (2 * (1 - kp) * K ** 2 * math.sqrt(kp) / math.pi ** 2) ** 0.25
        assert t.theta == pytest.approx(th, rel=1e-12)
        assert t.theta1 == pytest.approx(th, rel=1e-12)
        assert t.h == pytest.approx(h, rel=1e-12)
        assert t.h1 == pytest.approx(h, rel=1e-12)

    @pytest.mark.parametrize("k", [0.2, 0.7, 0.95, 0.999999])
    def test_normalisation(self, k):
        mod = Modulus.from_k(k)
        K, kp = complete_K(mod), mod.k_prime
        z = theta_quad(0.0, mod).theta
        assert z ** 4 == pytest.approx(4 * kp ** 2 * K ** 2 / math.pi ** 2, rel=1e-11)
        assert z == pytest.approx(math.sqrt(kp) * theta_quad(K, mod).theta, rel=1e-12)

    @pytest.mark.parametrize("k", [0.3, 0.8, 0.99, 0.999999])
    @pytest.mark.parametrize("frac", [0.1, 0.37, 0.5, 0.9])
    def test_duplication(self, k, frac):
        u = frac * complete_K(k)
        assert max(abs(r) for r in duplication_residuals(u, k)) < 1e-11

    def test_direct_and_transformed_series_agree(self):
        # both evaluation routes are valid for any nome; compare around the switch
        for k in [0.9, 0.99, 0.9999, 0.999999]:
            mod = Modulus.from_k(k)
            K, Kp = complete_K(mod), complete_K_prime(mod)
            u = np.linspace(-2.5 * K, 2.5 * K, 41)
            a = _theta_direct(u, K, nome(mod), 1e-16)
            b = _theta_transformed(u, K, Kp, 1e-16)
            for x, y in zip(a, b):
                assert np.allclose(x, y, rtol=1e-12, atol=1e-13)

    def test_against_mpmath_jtheta(self):
        k = 0.8
        mod = Modulus.from_k(k)
        K, q = complete_K(mod), nome(mod)
        for u in [0.2, 1.1, 2.9]:
            v = math.pi * u / (2 * K)
            t = theta_quad(u, mod)
            ref = [float(mpmath.jtheta(n, v, q)) for n in (4, 1, 2, 3)]
            assert [t.theta, t.h, t.h1, t.theta1] == pytest.approx(ref, rel=1e-13)


class TestZeta:
    @pytest.mark.parametrize("k", [0.1, 0.5, 0.9, 0.999999])
    def test_zero_at_ends(self, k):
        assert abs(jacobi_zn(0.0, k)) < 1e-15
        assert abs(jacobi_zn(complete_K(k), k)) < 1e-12

    def test_quadrature_at_half_period(self):
        k = 0.8
        K, E = complete_K(k), complete_E(k)
        integral = quad(lambda v: jacobi_sncndn(v, k).dn ** 2, 0, K / 2, epsabs=1e-14, epsrel=1e-14)[0]
        oracle = integral - 0.5 * E
        assert oracle == pytest.approx(0.2, abs=1e-13)
        assert jacobi_zn(K / 2, k) == pytest.approx(0.2, abs=1e-13)

    @pytest.mark.parametrize("k", [0.3, 0.9, 0.9999])
    def test_quadrature_grid(self, k):
        K, E = complete_K(k), complete_E(k)
        for u in np.linspace(0, K, 7):
            integral = quad(lambda v: jacobi_sncndn(v, k).dn ** 2, 0, u, epsabs=1e-13, epsrel=1e-13)[0]
            assert jacobi_zn(u, k) == pytest.approx(integral - u * E / K, abs=1e-10)


class TestEpsilon:
    def test_ends(self):
        assert jacobi_epsilon(0.0, 0.6) == 0.0
        assert jacobi_epsilon(complete_K(0.6), 0.6) == pytest.approx(complete_E(0.6), abs=1e-12)

    def test_consistency(self):
        u, k = 0.5, 0.7
        assert jacobi_epsilon(u, k) - u * complete_E(k) / complete_K(k) == pytest.approx(jacobi_zn(u, k), abs=1e-11)

    def test_against_mpmath(self):
        k = 0.7
        u = 0.9
        phi = mpmath.ellipfun("sn", u, m=k * k)
        ref = mpmath.ellipe(mpmath.asin(phi), k * k)
        assert jacobi_epsilon(u, k) == pytest.approx(float(ref), rel=1e-13)
