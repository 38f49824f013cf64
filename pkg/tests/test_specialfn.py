import math

import mpmath as mp
import numpy as np
import pytest

from invsquare import specialfn as sf
from invsquare.errors import DomainError

mp.mp.dps = 30

# Frozen high-precision oracles (40 digits, computed independently of scipy):
#   Gamma(1.25)       Stirling series at x + 40 with downward recurrence
#   arg Gamma(1 + i)  -gamma_E mu + sum_k [mu/k - atan(mu/k)] (Weierstrass product)
#   K_{1/4}(2)        (pi/2) csc(pi nu) [I_{-nu} - I_nu] with 80-term I series
#   I_{0.3}(2)        80-term ascending series
#   K_{i}(1)          int_0^inf exp(-cosh t) cos t dt
GAMMA_1_25 = 0.90640247705547707798
ARG_GAMMA_1P_I = {1.0: -0.30164032046753319789, 0.5: -0.24405829890542776266, 0.7: -0.29282635118686192870}
K_QUARTER_AT_2 = 0.11537827684085675697
I_03_AT_2 = 2.1776379895537379568
K_I_AT_1 = 0.28942803702599212763

REAL_ORDERS = [0.0, 1e-9, 1e-7, 2e-6, 1e-5, 1e-3, 0.1, 0.25, 0.3, 0.49, 0.5, 0.75, 0.99]


def rel(a, b):
    return abs(a - b) / abs(b)


class TestGamma:
    def test_known_values(self):
        assert rel(sf.gamma_fn(0.5), math.sqrt(math.pi)) < 1e-15
        assert sf.gamma_fn(1.0) == 1.0
        assert rel(sf.gamma_fn(1.25), GAMMA_1_25) < 1e-12

    @pytest.mark.parametrize("x", np.geomspace(1e-3, 20, 41))
    def test_against_mpmath(self, x):
        assert rel(sf.gamma_fn(x), float(mp.gamma(x))) < 1e-12

    @pytest.mark.parametrize("x", [0.0, -1.5])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            sf.gamma_fn(x)


class TestDigamma:
    def test_known_values(self):
        g = 0.57721566490153286061
        assert rel(sf.digamma(1.0), -g) < 1e-14
        assert rel(sf.digamma(2.0), 1 - g) < 1e-14
        assert rel(sf.digamma(0.5), -g - 2 * math.log(2)) < 1e-14

    @pytest.mark.parametrize("x", np.geomspace(1e-3, 20, 41))
    def test_against_mpmath(self, x):
        ref = float(mp.digamma(x))
        assert abs(sf.digamma(x) - ref) <= 1e-10 * abs(ref) + 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.digamma(0.0)


class TestArgGamma:
    def test_small_mu_is_linear(self):
        mu = 1e-5
        assert abs(sf.arg_gamma_1p_i(mu) + 0.57721566490153286 * mu) < 1e-14

    @pytest.mark.parametrize("mu", sorted(ARG_GAMMA_1P_I))
    def test_weierstrass_oracle(self, mu):
        assert abs(sf.arg_gamma_1p_i(mu) - ARG_GAMMA_1P_I[mu]) < 1e-12

    @pytest.mark.parametrize("mu", [0.01, 0.2, 1.5, 3.0, 7.0, 20.0, 55.0])
    def test_principal_branch(self, mu):
        ref = float(mp.arg(mp.gamma(1 + 1j * mu)))
        got = sf.arg_gamma_1p_i(mu)
        assert -math.pi < got <= math.pi
        assert abs(got - ref) < 1e-10

    def test_modulus(self):
        for mu in (1e-3, 0.5, 2.0, 40.0, 300.0):
            assert rel(sf.abs_gamma_1p_i(mu), float(abs(mp.gamma(1 + 1j * mu)))) < 1e-13


class TestBesselK:
    def test_half_order_closed_form(self):
        assert rel(sf.bessel_k(0.5, 1.0).value, math.sqrt(math.pi / 2) * math.exp(-1)) < 1e-14

    def test_series_oracle(self):
        assert rel(sf.bessel_k(0.25, 2.0).value, K_QUARTER_AT_2) < 1e-12

    @pytest.mark.parametrize("nu", REAL_ORDERS)
    def test_against_mpmath(self, nu):
        for x in np.geomspace(1e-6, 30, 37):
            res = sf.bessel_k(nu, x)
            ref = float(mp.besselk(nu, x))
            assert rel(res.value, ref) <= 1e-10, (nu, x)
            assert abs(res.value - ref) <= res.abs_error_estimate + 4e-16 * abs(ref)

    @pytest.mark.parametrize("nu", REAL_ORDERS)
    def test_derivative(self, nu):
        for x in np.geomspace(1e-5, 30, 19):
            ref = float(mp.diff(lambda t: mp.besselk(nu, t), x))
            assert rel(sf.bessel_k_deriv(nu, x), ref) <= 1e-10

    @pytest.mark.parametrize("nu", [0.0, 0.3, 0.9])
    def test_monotone_and_decaying(self, nu):
        xs = np.geomspace(1e-6, 600, 400)
        vals = [sf.bessel_k(nu, x).value for x in xs]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-250

    def test_continuity_in_order(self):
        x = 0.7
        k0 = sf.bessel_k(0.0, x).value
        gaps = [abs(sf.bessel_k(nu, x).value - k0) for nu in (1e-2, 1e-3, 1e-4, 1e-5)]
        assert all(a > b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-9

    def test_threshold_seam(self):
        # just below and above the K_0 substitution threshold
        t = sf.K_ZERO_ORDER_THRESHOLD
        for x in (1e-4, 0.5, 1.9):
            a, b = sf.bessel_k(t * 0.999, x).value, sf.bessel_k(t * 1.001, x).value
            assert rel(a, b) < 1e-10  # substitution error is O(nu^2 ln^2 x)

    @pytest.mark.parametrize("x", [0.0, -1.0])
    def test_domain(self, x):
        with pytest.raises(DomainError):
            sf.bessel_k(0.3, x)

    def test_order_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_k(1.0, 1.0)


class TestBesselI:
    def test_known_values(self):
        assert sf.bessel_i(0.0, 0.0).value == 1.0
        assert rel(sf.bessel_i(0.5, 1.0).value, math.sqrt(2 / math.pi) * math.sinh(1)) < 1e-14
        assert rel(sf.bessel_i(0.3, 2.0).value, I_03_AT_2) < 1e-12

    @pytest.mark.parametrize("nu", [0.0, 0.1, 0.3, 0.5, 0.99])
    def test_against_mpmath(self, nu):
        for x in np.geomspace(1e-6, 30, 25):
            assert rel(sf.bessel_i(nu, x).value, float(mp.besseli(nu, x))) <= 1e-12

    @pytest.mark.parametrize("nu", [0.0, 0.1, 0.25, 0.49])
    @pytest.mark.parametrize("x", [0.1, 1.0, 5.0])
    def test_wronskian(self, nu, x):
        w = sf.bessel_i(nu, x).value * sf.bessel_k_deriv(nu, x) - sf.bessel_i_deriv(nu, x) * sf.bessel_k(nu, x).value
        assert rel(w, -1.0 / x) < 1e-9


class TestBesselJY:
    def test_closed_forms(self):
        assert sf.bessel_j(0.0, 0.0).value == 1.0
        for x in (0.3, 2.0, 17.0):
            assert abs(sf.bessel_j(0.5, x).value - math.sqrt(2 / (math.pi * x)) * math.sin(x)) < 1e-14

    def test_y0_small_argument(self):
        z = 1e-5
        lead = 2 / math.pi * (math.log(z / 2) - sf.digamma(1.0))
        # next correction is O(z^2 ln z)
        assert abs(sf.bessel_y(0.0, z).value - lead) < 1e-8

    @pytest.mark.parametrize("nu", [0.0, 0.1, 0.25, 0.5, 0.75, 0.99])
    def test_against_mpmath(self, nu):
        # near zeros of J and Y the error is measured against the 1/sqrt(x) envelope
        for x in np.geomspace(1e-6, 50, 41):
            for f, g in ((sf.bessel_j, mp.besselj), (sf.bessel_y, mp.bessely)):
                ref = float(g(nu, x))
                scale = max(abs(ref), math.sqrt(2 / (math.pi * x)) if x > 1 else 0.0)
                assert abs(f(nu, x).value - ref) <= 1e-9 * scale, (f.__name__, nu, x)

    @pytest.mark.parametrize("nu", [0.0, 0.3, 0.5, 0.8])
    def test_large_argument_asymptotics(self, nu):
        a = 4 * nu * nu
        for x in (25.0, 40.0, 80.0):
            env = math.sqrt(2 / (math.pi * x))
            phase = x - 0.5 * nu * math.pi - 0.25 * math.pi
            bound = env * (abs(a - 1) / (8 * x) + abs((a - 1) * (a - 9)) / (128 * x * x)) + 1e-14
            assert abs(sf.bessel_j(nu, x).value - env * math.cos(phase)) <= bound
            assert abs(sf.bessel_y(nu, x).value - env * math.sin(phase)) <= bound

    def test_derivatives(self):
        for nu in (0.0, 0.3):
            for x in (0.01, 1.0, 7.0):
                assert rel(sf.bessel_j_deriv(nu, x), float(mp.diff(lambda t: mp.besselj(nu, t), x))) < 1e-10
                assert rel(sf.bessel_y_deriv(nu, x), float(mp.diff(lambda t: mp.bessely(nu, t), x))) < 1e-10

    def test_y_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_y(0.2, 0.0)


class TestBesselKImag:
    def test_integral_oracle(self):
        assert rel(sf.bessel_k_imag(1.0, 1.0).value, K_I_AT_1) < 1e-10

    @pytest.mark.parametrize("mu", [0.05, 0.3, 1.0, 2.5, 5.0])
    def test_against_mpmath(self, mu):
        for x in np.geomspace(1e-4, 20, 25):
            res = sf.bessel_k_imag(mu, x)
            ref = float(mp.re(mp.besselk(1j * mu, x)))
            assert rel(res.value, ref) <= 1e-8, (mu, x)
            assert abs(res.value - ref) <= res.abs_error_estimate

    def test_decay(self):
        for mu in (0.5, 2.0):
            ratio = [sf.bessel_k_imag(mu, x).value * math.exp(x) * math.sqrt(x) for x in (20.0, 30.0, 40.0)]
            # e^{-x} sqrt(pi / 2x) envelope
            for r in ratio:
                assert 0.9 < r / math.sqrt(math.pi / 2) < 1.1

    def test_small_argument_sign_pattern(self):
        mu = 0.5
        phi = sf.arg_gamma_1p_i(mu)
        for x in np.geomspace(1e-4, 0.01, 30):
            predicted = -math.sin(mu * math.log(x / 2) - phi)
            if abs(predicted) > 1e-3:
                assert np.sign(sf.bessel_k_imag(mu, x).value) == np.sign(predicted)

    def test_domain(self):
        with pytest.raises(DomainError):
            sf.bessel_k_imag(1.0, 0.0)
        with pytest.raises(DomainError):
            sf.bessel_k_imag(0.0, 1.0)


class TestOrderAndDispatch:
    def test_order_validation(self):
        assert sf.Order.real(0.0).kind is sf.OrderKind.REAL
        assert sf.Order.imaginary(2.0).value == 2.0
        for bad in (-0.1, 1.0):
            with pytest.raises(DomainError):
                sf.Order.real(bad)
        with pytest.raises(DomainError):
            sf.Order.imaginary(0.0)

    def test_evaluate(self):
        assert sf.evaluate("bessel_k", 0.3, 1.0) == sf.bessel_k(0.3, 1.0)
        assert sf.evaluate("bessel_k", 1.0, 1.0, imaginary=True) == sf.bessel_k_imag(1.0, 1.0)
        assert sf.evaluate("gamma", None, 0.5).value == sf.gamma_fn(0.5)
        with pytest.raises(DomainError):
            sf.evaluate("bessel_j", 0.3, 1.0, imaginary=True)
        with pytest.raises(DomainError):
            sf.evaluate("nope", 0.3, 1.0)

    def test_deterministic(self):
        a = [sf.bessel_k(0.37, x) for x in (1e-3, 1.0, 9.0)] + [sf.bessel_k_imag(0.8, 0.2)]
        b = [sf.bessel_k(0.37, x) for x in (1e-3, 1.0, 9.0)] + [sf.bessel_k_imag(0.8, 0.2)]
        assert a == b
