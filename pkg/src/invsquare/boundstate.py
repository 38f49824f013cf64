"""
Subcritical bound state chi(rho) = rho^{1/2} K_nu(rho) and its closed forms.

Conventions: hbar = 2m = 1, rho = kappa * r with kappa = sqrt(-E).  The
pure inverse-square problem fixes no energy scale, so kappa is an input.
Closed forms are in rho-units with kappa as an explicit factor:

    boundary term   [chi (d/dr + (nu - 1/2)/r) chi]_0^inf = (pi/2) kappa csc(pi nu)
    normalization   int_0^inf rho K_nu(rho)^2 drho        = pi nu / (2 sin(pi nu))
    Hardy integral  int_0^inf (chi' + (nu - 1/2) chi / r)^2 dr
                                                          = (pi/2) kappa (1 - nu) csc(pi nu)

and E <psi|psi> = -kappa * normalization = Hardy - boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .coupling import CouplingParams, Regime
from .errors import DomainError, PoleError
from .specialfn import EULER_GAMMA, bessel_k, bessel_k_deriv, gamma_fn

#: quadratures run over (0, RHO_MAX]; the remainder is added from the e^{-2 rho} tail
RHO_MAX = 40.0
#: first sample radius for the numerical boundary-term limit
BOUNDARY_RHO_SMALL = 1e-2
#: below this nu, rho^{2 nu} varies too slowly at rho ~ 1e-2; start at BOUNDARY_RHO_SMALL_WEAK
BOUNDARY_WEAK_NU = 0.05
BOUNDARY_RHO_SMALL_WEAK = 1e-7
#: exponents closer than this are treated as one in the boundary extrapolation
BOUNDARY_EXPONENT_MERGE = 0.05
#: default outer radius for the numerical boundary-term limit
BOUNDARY_RHO_LARGE = 30.0


@dataclass(frozen=True)
class BoundState:
    params: CouplingParams
    kappa: float

    def __post_init__(self):
        if self.params.regime not in (Regime.BOUND_ALLOWED, Regime.TRANSITIONAL):
            raise DomainError(f"no subcritical bound state in regime {self.params.regime.value}")
        if not self.kappa > 0:
            raise DomainError(f"kappa must be > 0, got {self.kappa}")

    @property
    def nu(self) -> float:
        return self.params.nu

    @property
    def energy(self) -> float:
        return -self.kappa**2


@dataclass(frozen=True)
class ClosedFormChecks:
    boundary_term: float
    normalization: float
    hardy_integral: float
    consistency_residual: float

    @property
    def energy_norm(self) -> float:
        """E <psi|psi> in the same units as the other fields."""
        return self.hardy_integral - self.boundary_term


def _nu_of(state_or_nu):
    return state_or_nu.nu if isinstance(state_or_nu, BoundState) else float(state_or_nu)


# --------------------------------------------------------------------------
# eigenfunction
# --------------------------------------------------------------------------

def chi_nu(nu: float, rho: float) -> float:
    if not rho > 0:
        raise DomainError(f"rho must be > 0, got {rho}")
    return math.sqrt(rho) * bessel_k(nu, rho).value


def chi_nu_deriv(nu: float, rho: float) -> float:
    """d chi / d rho."""
    k = bessel_k(nu, rho).value
    return 0.5 * k / math.sqrt(rho) + math.sqrt(rho) * bessel_k_deriv(nu, rho)


def chi(state: BoundState | float, rho: float) -> float:
    """rho^{1/2} K_nu(rho); ``state`` may be a BoundState or a bare nu."""
    return chi_nu(_nu_of(state), rho)


def chi_at_radius(state: BoundState, r: float) -> float:
    return chi(state, state.kappa * r)


def chi_near_origin(state: BoundState | float, rho: float) -> float:
    """Four-term small-rho expansion of chi.

    nu > 0:
        (pi/2) csc(pi nu) rho^{1/2} [ t^{-nu}/G(1-nu) + t^{2-nu}/G(2-nu)
                                      - t^{nu}/G(1+nu) - t^{2+nu}/G(2+nu) ],  t = rho/2
    nu = 0 (limit of the above):
        rho^{1/2} [ psi(1) - ln t + t^2 (psi(2) - ln t) ]
    """
    nu = _nu_of(state)
    if not 0 < rho <= 0.1:
        raise DomainError(f"near-origin expansion needs 0 < rho <= 0.1, got {rho}")
    t = 0.5 * rho
    if nu == 0.0:
        log_t = math.log(t)
        return math.sqrt(rho) * (-EULER_GAMMA - log_t + t * t * (1.0 - EULER_GAMMA - log_t))
    bracket = (
        t**-nu / gamma_fn(1 - nu)
        + t ** (2 - nu) / gamma_fn(2 - nu)
        - t**nu / gamma_fn(1 + nu)
        - t ** (2 + nu) / gamma_fn(2 + nu)
    )
    return 0.5 * math.pi / math.sin(math.pi * nu) * math.sqrt(rho) * bracket


def near_origin_error_bound(nu: float, rho: float) -> float:
    """Bound on |chi_near_origin - chi| / chi for 0 < nu < 1/2, rho <= 0.1.

    The first omitted terms are t^{4 -+ nu}/(2 G(3 -+ nu)); relative to chi
    they are at most NEAR_ORIGIN_C * rho^{4-nu} / nu, plus a rounding floor.
    """
    return NEAR_ORIGIN_C * rho ** (4 - nu) / nu + NEAR_ORIGIN_FLOOR


#: constant in near_origin_error_bound (measured maximum 0.0072 over nu in [0.005, 0.5))
NEAR_ORIGIN_C = 0.01
NEAR_ORIGIN_FLOOR = 1e-13


# --------------------------------------------------------------------------
# closed forms
# --------------------------------------------------------------------------

def _csc_pi(nu, name):
    if nu <= 0.0 or nu >= 1.0:
        raise PoleError(f"{name}: csc(pi nu) diverges at nu = {nu}", where=nu)
    return 1.0 / math.sin(math.pi * nu)


def boundary_term_closed(nu: float, kappa: float = 1.0) -> float:
    return 0.5 * math.pi * kappa * _csc_pi(nu, "boundary term")


def normalization_closed(nu: float) -> float:
    """int_0^inf rho K_nu(rho)^2 drho; the nu = 0 value is the analytic limit 1/2."""
    if not 0.0 <= nu < 1.0:
        raise DomainError(f"normalization needs 0 <= nu < 1, got {nu}")
    if nu == 0.0:
        return 0.5
    return math.pi * nu / (2.0 * math.sin(math.pi * nu))


def hardy_integral_closed(nu: float, kappa: float = 1.0) -> float:
    return 0.5 * math.pi * kappa * (1.0 - nu) * _csc_pi(nu, "Hardy integral")


def energy_balance(nu: float, kappa: float = 1.0) -> ClosedFormChecks:
    """Check -kappa * normalization == Hardy - boundary."""
    boundary = boundary_term_closed(nu, kappa)
    hardy = hardy_integral_closed(nu, kappa)
    norm = normalization_closed(nu)
    resid = abs(hardy - boundary + kappa * norm)
    return ClosedFormChecks(boundary, norm, hardy, resid)


def coefficient_ratio_BA(nu: float, kappa: float) -> float:
    """B/A for chi ~ A r^{1/2+nu} + B r^{1/2-nu} near the origin, bound state of scale kappa."""
    if not 0.0 < nu < 0.5:
        raise DomainError(f"coefficient ratio needs 0 < nu < 1/2, got {nu}")
    if not kappa > 0:
        raise DomainError(f"kappa must be > 0, got {kappa}")
    return -gamma_fn(1 + nu) * (0.5 * kappa) ** (-2 * nu) / gamma_fn(1 - nu)


# --------------------------------------------------------------------------
# numerical counterparts
# --------------------------------------------------------------------------

def _tail_rho_k2(rho_max):
    # rho K^2 ~ (pi/2) e^{-2 rho}
    return 0.25 * math.pi * math.exp(-2.0 * rho_max)


def normalization_quadrature(nu: float, rho_max: float = RHO_MAX) -> oracle.QuadratureResult:
    res = oracle.integrate(
        lambda r: r * bessel_k(nu, r).value ** 2,
        0.0, rho_max, tol=1e-14, rel_tol=1e-12,
        singular_exponent=(1.0 - 2.0 * nu) if nu > 0.5 else None,
    )
    tail = _tail_rho_k2(rho_max)
    return oracle.QuadratureResult(res.value + tail, res.abs_error_estimate + tail, res.subdivisions)


def hardy_integrand(nu: float, rho: float) -> float:
    """(chi' + (nu - 1/2) chi / rho)^2 in rho-units, built from chi and chi'."""
    d = chi_nu_deriv(nu, rho) + (nu - 0.5) * chi_nu(nu, rho) / rho
    return d * d


def hardy_quadrature(nu: float, kappa: float = 1.0, rho_max: float = RHO_MAX) -> oracle.QuadratureResult:
    res = oracle.integrate(
        lambda r: hardy_integrand(nu, r),
        0.0, rho_max, tol=1e-14, rel_tol=1e-12,
        singular_exponent=2.0 * nu - 1.0,
    )
    tail = _tail_rho_k2(rho_max)
    return oracle.QuadratureResult(
        kappa * (res.value + tail), kappa * (res.abs_error_estimate + tail), res.subdivisions
    )


def boundary_bracket(nu: float, rho: float) -> float:
    """chi (chi' + (nu - 1/2) chi / rho) at rho, in rho-units."""
    c = chi_nu(nu, rho)
    return c * (chi_nu_deriv(nu, rho) + (nu - 0.5) * c / rho)


def _bracket_exponents(nu):
    """Powers of rho in the small-rho expansion of the bracket, below rho^4."""
    out = []
    for p in sorted((2 * nu, 2 - 2 * nu, 2.0, 2 + 2 * nu, 4 - 2 * nu)):
        if not out or p - out[-1] > BOUNDARY_EXPONENT_MERGE:
            out.append(p)
    return out


def boundary_term_numeric(
    nu: float,
    kappa: float = 1.0,
    rho_small: float | None = None,
    rho_large: float = BOUNDARY_RHO_LARGE,
) -> float:
    """[bracket]_0^inf from direct evaluation of chi and chi'.

    Near 0 the bracket is L + sum_p c_p rho^p with p in {2 nu, 2 - 2 nu, 2,
    2 + 2 nu, 4 - 2 nu, ...}.  The lower limit L is extracted from samples at
    rho_small / 2^k by solving for L and one coefficient per exponent.  Starting
    too close to 0 loses digits: chi' + (nu - 1/2) chi / rho cancels its
    leading term, leaving a relative size rho^{2 nu}.  Accuracy is about 1e-9
    relative for nu <= 0.95 and degrades toward the nu = 1 pole, where the
    rho^{2 - 2 nu} correction is nearly constant.
    """
    if not 0.0 < nu < 1.0:
        raise PoleError(f"boundary term diverges at nu = {nu}", where=nu)
    if rho_small is None:
        rho_small = BOUNDARY_RHO_SMALL if nu >= BOUNDARY_WEAK_NU else BOUNDARY_RHO_SMALL_WEAK
    powers = _bracket_exponents(nu)
    rhos = [rho_small / 2**k for k in range(len(powers) + 1)]
    m = np.array([[1.0] + [(r / rho_small) ** p for p in powers] for r in rhos])
    v = np.array([boundary_bracket(nu, r) for r in rhos])
    lower = float(np.linalg.solve(m, v)[0])
    upper = boundary_bracket(nu, rho_large)
    return kappa * (upper - lower)
