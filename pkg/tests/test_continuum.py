import math

import pytest
from hypothesis import given, strategies as st

from invsquare import continuum as ct
from invsquare import oracle
from invsquare.errors import DomainError
from invsquare.specialfn import gamma_fn


def rel(a, b):
    return abs(a - b) / abs(b)


def wronskian_limit(nu, k0, state):
    """r -> 0 limit 2 nu (b0 a1 - a0 b1) from the leading power-law coefficients.

    chi_0 ~ b0 r^{1/2-nu} + a0 r^{1/2+nu},  chi_1 ~ b1 r^{1/2-nu} + a1 r^{1/2+nu}
    using K_nu = (pi/2) csc(pi nu) [I_{-nu} - I_nu] and Y_nu = [J_nu cos(pi nu) - J_{-nu}] / sin(pi nu).
    """
    s, c = math.sin(math.pi * nu), math.cos(math.pi * nu)
    g_minus, g_plus = gamma_fn(1 - nu), gamma_fn(1 + nu)
    k1, A1, B1 = state.k1, state.A1, state.B1
    b0 = math.sqrt(k0) * 0.5 * math.pi / s * (k0 / 2) ** -nu / g_minus
    a0 = -math.sqrt(k0) * 0.5 * math.pi / s * (k0 / 2) ** nu / g_plus
    b1 = -math.sqrt(k1) * B1 * (k1 / 2) ** -nu / (g_minus * s)
    a1 = math.sqrt(k1) * (k1 / 2) ** nu / g_plus * (A1 + B1 * c / s)
    return 2 * nu * (b0 * a1 - a0 * b1)


class TestCoefficientRatio:
    def test_examples(self):
        assert ct.coefficient_ratio(0.0, 1.7, 1.7) == 0.0
        assert ct.coefficient_ratio(0.25, 1.0, 1.0) == pytest.approx(math.tan(math.pi / 8), rel=1e-14)
        assert ct.coefficient_ratio(0.25, 1.0, 0.0) == math.inf
        assert ct.coefficient_ratio(0.0, 1.0, math.e) == pytest.approx(-2 / math.pi, rel=1e-15)

    def test_small_k1_grows_without_bound(self):
        vals = [ct.coefficient_ratio(0.3, 1.0, k) for k in (1e-1, 1e-3, 1e-6)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    @given(st.floats(0.0, 0.49), st.floats(0.01, 100), st.floats(0.01, 100), st.floats(0.01, 100))
    def test_scale_invariance(self, nu, k0, k1, c):
        a = ct.coefficient_ratio(nu, k0, k1)
        b = ct.coefficient_ratio(nu, c * k0, c * k1)
        assert b == pytest.approx(a, rel=1e-9, abs=1e-12)

    @pytest.mark.parametrize("k0, k1", [(1.0, 2.0), (1.0, 3.0), (2.0, 0.5), (1.0, 0.1)])
    def test_branch_continuity(self, k0, k1):
        assert rel(ct.coefficient_ratio(1e-4, k0, k1), ct.coefficient_ratio(0.0, k0, k1)) <= 1e-3

    @pytest.mark.parametrize("args", [(0.5, 1.0, 1.0), (-0.1, 1.0, 1.0), (0.2, 0.0, 1.0), (0.2, 1.0, -1.0)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            ct.coefficient_ratio(*args)


class TestContinuumState:
    def test_orthogonal_state_normalized(self):
        s = ct.ContinuumState.orthogonal_to_bound(0.3, 1.0, 0.2)
        assert max(abs(s.A1), abs(s.B1)) == 1.0
        assert s.A1 / s.B1 == pytest.approx(ct.coefficient_ratio(0.3, 1.0, 0.2), rel=1e-14)
        assert s.branch == "nu_nonzero"
        assert ct.ContinuumState.orthogonal_to_bound(0.0, 1.0, 2.0).branch == "nu_zero"

    @pytest.mark.parametrize("args", [(0.5, 1.0, 1.0, 0.0), (0.2, 0.0, 1.0, 0.0), (0.2, 1.0, 0.0, 0.0)])
    def test_validation(self, args):
        with pytest.raises(DomainError):
            ct.ContinuumState(*args)


class TestChiContinuum:
    def test_half_order_sine(self):
        s = ct.ContinuumState(0.5 - 1e-15, 2.0, 1.0, 0.0)
        for r in (0.1, 1.3, 7.0):
            assert ct.chi_continuum(s, r) == pytest.approx(math.sqrt(2 / math.pi) * math.sin(2.0 * r), abs=1e-13)

    def test_pure_y_small_r(self):
        nu, k1 = 0.3, 1.5
        s = ct.ContinuumState(nu, k1, 0.0, 1.0)
        r = 1e-10
        z = k1 * r
        lead = -math.sqrt(z) * (z / 2) ** -nu * gamma_fn(nu) / math.pi
        assert rel(ct.chi_continuum(s, r), lead) < 1e-4  # next term is O(z^{2 nu}) ~ 4e-7

    @pytest.mark.parametrize("nu", [0.0, 0.2, 0.45])
    def test_ode_residual(self, nu):
        s = ct.ContinuumState.orthogonal_to_bound(nu, 1.0, 1.0)
        samples = [0.2 + 0.37 * k for k in range(25)]
        assert oracle.ode_residual(lambda r: ct.chi_continuum(s, r), samples, 0.25 - nu * nu, +1) <= 1e-6

    def test_large_argument_phase(self):
        nu, k1 = 0.3, 1.0
        s = ct.ContinuumState.orthogonal_to_bound(nu, 2.0, k1)
        for r in (200.0, 400.0):
            ph = k1 * r - 0.5 * nu * math.pi - 0.25 * math.pi
            approx = math.sqrt(2 / math.pi) * (s.A1 * math.cos(ph) + s.B1 * math.sin(ph))
            assert abs(ct.chi_continuum(s, r) - approx) < 2e-3

    def test_derivative(self):
        s = ct.ContinuumState.orthogonal_to_bound(0.3, 1.0, 2.0)
        for r in (0.01, 1.0, 5.0):
            h = 1e-5 * r
            fd = (ct.chi_continuum(s, r + h) - ct.chi_continuum(s, r - h)) / (2 * h)
            assert ct.chi_continuum_deriv(s, r) == pytest.approx(fd, rel=1e-7)

    @pytest.mark.parametrize("nu", [0.1, 0.3, 0.45])
    def test_pure_y_normalizable_at_origin(self, nu):
        # chi^2 ~ c^2 r^{1 - 2 nu}, so int_0^delta chi^2 dr ~ c^2 delta^{2 - 2 nu} / (2 - 2 nu)
        s = ct.ContinuumState(nu, 1.0, 0.0, 1.0)
        c2 = (2**nu * gamma_fn(nu) / math.pi) ** 2
        errs = []
        for d in (1e-2, 1e-4, 1e-6, 1e-8):
            # the integral is ~1e-9 at the smallest delta, so use a purely relative tolerance
            v = oracle.integrate(
                lambda r: ct.chi_continuum(s, r) ** 2, 0.0, d, tol=0.0, singular_exponent=2 * nu - 1
            ).value
            assert math.isfinite(v)
            errs.append(abs(v * (2 - 2 * nu) / d ** (2 - 2 * nu) / c2 - 1))
        assert all(a > b for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 5 * 1e-8 ** (2 * nu)


class TestWronskian:
    @pytest.mark.parametrize("nu, k0, k1", [(0.25, 1.0, 2.0), (0.4, 1.0, 0.5), (0.3, 1.0, 1.0), (0.1, 2.0, 0.3)])
    def test_compliant_state(self, nu, k0, k1):
        s = ct.ContinuumState.orthogonal_to_bound(nu, k0, k1)
        r = 1e-5
        assert abs(ct.wronskian_boundary(nu, k0, s, r)) <= 1e-4 * ct.wronskian_scale(nu, k0, s, r)
        assert abs(wronskian_limit(nu, k0, s)) < 1e-13

    def test_compliant_state_tends_to_zero(self):
        s = ct.ContinuumState.orthogonal_to_bound(0.3, 1.0, 1.0)
        w = [abs(ct.wronskian_boundary(0.3, 1.0, s, r)) for r in (1e-2, 1e-4, 1e-6)]
        assert all(a > b for a, b in zip(w, w[1:]))
        assert w[-1] < 1e-6

    @pytest.mark.parametrize("nu, k0, k1", [(0.4, 1.0, 0.5), (0.3, 1.0, 1.0), (0.1, 2.0, 0.3), (0.25, 1.0, 1.5)])
    def test_doubled_ratio_has_nonzero_limit(self, nu, k0, k1):
        ratio = ct.coefficient_ratio(nu, k0, k1)
        assert ratio != 0.0
        wrong = ct.ContinuumState.from_coefficients(nu, k1, 2 * ratio, 1.0)
        limit = wronskian_limit(nu, k0, wrong)
        assert abs(limit) > 1e-2
        w = [ct.wronskian_boundary(nu, k0, wrong, r) for r in (1e-4, 1e-6, 1e-8)]
        assert all(abs(v) > 0.5 * abs(limit) for v in w)
        assert w[-1] == pytest.approx(limit, rel=1e-3)

    def test_transitional_decays_logarithmically(self):
        s = ct.ContinuumState.orthogonal_to_bound(0.0, 1.0, 3.0)
        w = [abs(ct.wronskian_boundary(0.0, 1.0, s, r)) for r in (1e-2, 1e-4, 1e-6, 1e-8)]
        assert all(a > b for a, b in zip(w, w[1:]))

    def test_large_r_bounded(self):
        s = ct.ContinuumState.orthogonal_to_bound(0.3, 1.0, 1.0)
        assert all(abs(ct.wronskian_boundary(0.3, 1.0, s, r)) < 10 for r in (5.0, 10.0, 20.0))


class TestOrthogonality:
    @pytest.mark.parametrize("nu, k0, k1", [(0.25, 1.0, 2.0), (0.0, 1.0, 3.0), (0.4, 1.0, 0.5)])
    def test_compliant_defect(self, nu, k0, k1):
        s = ct.ContinuumState.orthogonal_to_bound(nu, k0, k1)
        assert abs(ct.orthogonality_defect(nu, k0, s)) <= 1e-4 * ct.bound_norm(nu, k0)

    @pytest.mark.parametrize("nu, k0, k1", [(0.25, 1.0, 2.0), (0.0, 1.0, 3.0), (0.4, 1.0, 0.5)])
    def test_j_only_state_is_not_orthogonal(self, nu, k0, k1):
        s = ct.ContinuumState(nu, k1, 1.0, 0.0)
        assert abs(ct.orthogonality_defect(nu, k0, s)) >= 1e-3 * ct.bound_norm(nu, k0)

    def test_bound_norm(self):
        assert ct.bound_norm(0.0, 4.0) == pytest.approx(math.sqrt(0.5 / 4.0), rel=1e-15)

    @pytest.mark.parametrize("eps", [(0.1, 0.2), (0.2, 0.0), (0.2, -0.1)])
    def test_eps_validation(self, eps):
        s = ct.ContinuumState.orthogonal_to_bound(0.25, 1.0, 2.0)
        with pytest.raises(DomainError):
            ct.orthogonality_defect(0.25, 1.0, s, eps)
