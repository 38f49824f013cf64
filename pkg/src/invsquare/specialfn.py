"""
Special functions for the inverse-square problem.

Gamma, digamma, arg Gamma(1 + i mu) and Bessel functions J, Y, I, K of real
order 0 <= nu < 1, plus K of purely imaginary order i*mu for real argument.

Methods
-------
- K_nu, x <= K_SERIES_MAX_X : (pi/2) csc(pi nu) [I_{-nu} - I_nu] with the two
  series differenced term by term through expm1, so neither the csc pole nor
  the I_{-nu} - I_nu cancellation loses digits as nu -> 0.
- K_nu, nu < K_ZERO_ORDER_THRESHOLD : logarithmic K_0 series.  K is even in
  nu, so the substitution error is O(nu^2).
- K_nu, x > K_SERIES_MAX_X : scipy.special.kv (Temme / Amos).
- I_nu, x <= I_SERIES_MAX_X : ascending series (all terms positive).
- J_nu, Y_nu : scipy.special (Amos).
- K_{i mu} : e^{-x} * int_0^T exp(-x (cosh t - 1)) cos(mu t) dt by adaptive
  quadrature, T chosen so the neglected tail is below exp(-K_IMAG_TAIL).

Every Bessel routine returns an ``EvalResult`` carrying a conservative
absolute error estimate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special as sc

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286061

#: series/library switchover for K_nu
K_SERIES_MAX_X = 2.0
#: below this order K_nu is replaced by K_0
K_ZERO_ORDER_THRESHOLD = 1e-6
#: ascending series for I_nu is used up to this argument
I_SERIES_MAX_X = 30.0
#: K_{i mu} integration stops where x (cosh t - 1) reaches this value
K_IMAG_TAIL = 50.0

_EPS = 2.220446049250313e-16
_LIB_REL_ERR = 1e-14
_MAX_TERMS = 200
# zeta(2k + 1), k = 1..40, for the odd part of ln Gamma(1 + z)
_ZETA_ODD = [float(v) for v in sc.zeta(2.0 * np.arange(1, 41) + 1.0)]


class OrderKind(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class Order:
    """Bessel order: real nu in [0, 1) or imaginary i*mu with mu > 0."""

    kind: OrderKind
    value: float

    def __post_init__(self):
        if self.kind is OrderKind.REAL and not 0.0 <= self.value < 1.0:
            raise DomainError(f"real order must lie in [0, 1), got {self.value}")
        if self.kind is OrderKind.IMAGINARY and not self.value > 0.0:
            raise DomainError(f"imaginary order must be > 0, got {self.value}")

    @classmethod
    def real(cls, nu: float) -> "Order":
        return cls(OrderKind.REAL, float(nu))

    @classmethod
    def imaginary(cls, mu: float) -> "Order":
        return cls(OrderKind.IMAGINARY, float(mu))


class EvalResult(NamedTuple):
    value: float
    abs_error_estimate: float


def _check_real_order(nu):
    if not 0.0 <= nu < 1.0:
        raise DomainError(f"order must lie in [0, 1), got {nu}")


# --------------------------------------------------------------------------
# Gamma family
# --------------------------------------------------------------------------

def gamma_fn(x: float) -> float:
    if not x > 0:
        raise DomainError(f"gamma_fn needs x > 0, got {x}")
    return math.gamma(x)


def digamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"digamma needs x > 0, got {x}")
    return float(sc.digamma(x))


def arg_gamma_1p_i(mu: float) -> float:
    """Principal argument of Gamma(1 + i mu), in (-pi, pi]."""
    if not mu > 0:
        raise DomainError(f"arg_gamma_1p_i needs mu > 0, got {mu}")
    phase = float(sc.loggamma(complex(1.0, mu)).imag)
    return math.remainder(phase, 2.0 * math.pi)


def abs_gamma_1p_i(mu: float) -> float:
    """|Gamma(1 + i mu)| = sqrt(pi mu / sinh(pi mu))."""
    if mu == 0:
        return 1.0
    # written with e^{-pi mu} so large mu does not overflow sinh
    t = math.pi * abs(mu)
    return math.sqrt(2.0 * t / -math.expm1(-2.0 * t)) * math.exp(-0.5 * t)


# --------------------------------------------------------------------------
# Modified Bessel functions, real order
# --------------------------------------------------------------------------

def _i_series(nu, x):
    """Ascending series for I_nu and I'_nu; returns (value, deriv, err)."""
    if x == 0.0:
        return (1.0 if nu == 0.0 else 0.0), math.nan, 0.0
    half = 0.5 * x
    q = half * half
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0))
    total = term
    dtotal = nu * term
    n = 0
    while n < _MAX_TERMS:
        n += 1
        term *= q / (n * (n + nu))
        total += term
        dtotal += (2 * n + nu) * term
        if term < _EPS * total * 1e-2:
            break
    err = (n + 2) * _EPS * total
    return total, dtotal / x, err


def bessel_i(nu: float, x: float) -> EvalResult:
    _check_real_order(nu)
    if x < 0:
        raise DomainError(f"bessel_i needs x >= 0, got {x}")
    if x <= I_SERIES_MAX_X:
        value, _, err = _i_series(nu, x)
        return EvalResult(value, err)
    value = float(sc.iv(nu, x))
    return EvalResult(value, _LIB_REL_ERR * abs(value))


def bessel_i_deriv(nu: float, x: float) -> float:
    _check_real_order(nu)
    if x <= 0:
        raise DomainError(f"bessel_i_deriv needs x > 0, got {x}")
    if x <= I_SERIES_MAX_X:
        return _i_series(nu, x)[1]
    return float(sc.ivp(nu, x))


def _k0_series(x):
    """K_0 and K_0' from the logarithmic series."""
    half = 0.5 * x
    q = half * half
    log_half = math.log(half)
    i0 = di0 = 0.0
    s = ds = 0.0
    w = 1.0  # (x/2)^{2n} / (n!)^2
    psi = -EULER_GAMMA
    abs_sum = 0.0   # sum |a_n - b_n|, for rounding in the sums
    d_err = 0.0     # rounding in d_n propagated through expm1
    for n in range(_MAX_TERMS):
        if n > 0:
            w *= q / (n * n)
            psi += 1.0 / n
        i0 += w
        di0 += 2 * n * w
        s += w * psi
        ds += 2 * n * w * psi
        abs_sum += w * (abs(psi) + abs(log_half))
        if n > 2 and w < _EPS * 1e-2:
            break
    value = -i0 * log_half + s
    deriv = (-di0 * log_half - i0 + ds) / x
    return value, deriv, (n + 4) * _EPS * abs_sum


def _lgamma_odd(nu):
    """ln Gamma(1 + nu) - ln Gamma(1 - nu) with full relative precision."""
    if nu > 0.3:
        return math.lgamma(1.0 + nu) - math.lgamma(1.0 - nu)
    nu2 = nu * nu
    p = nu
    total = EULER_GAMMA * nu
    for k, z in enumerate(_ZETA_ODD, start=1):
        p *= nu2
        term = z * p / (2 * k + 1)
        total += term
        if term < _EPS * 1e-2 * total:
            break
    return -2.0 * total


def _k_series(nu, x):
    """K_nu and K_nu' for 0 < nu < 1 from the I_{-nu} - I_nu combination.

    Term n of I_{-nu} - I_nu is b_n * expm1(d_n) with
    b_n = (x/2)^{2n+nu} / (n! Gamma(n+1+nu)) and
    d_n = -2 nu ln(x/2) + lnGamma(1+nu) - lnGamma(1-nu) + 2 sum_{k<=n} atanh(nu/k).
    """
    half = 0.5 * x
    q = half * half
    log_half = math.log(half)
    d = -2.0 * nu * log_half + _lgamma_odd(nu)
    b = math.exp(nu * log_half - math.lgamma(1.0 + nu))
    diff_sum = 0.0  # sum (a_n - b_n)
    dsum = 0.0      # sum (2n - nu) a_n - (2n + nu) b_n
    abs_sum = 0.0   # sum |a_n - b_n|, for rounding in the sums
    d_err = 0.0     # rounding in d_n propagated through expm1
    for n in range(_MAX_TERMS):
        if n > 0:
            b *= q / (n * (n + nu))
            d += 2.0 * math.atanh(nu / n)
        diff = b * math.expm1(d)
        a = b + diff
        diff_sum += diff
        dsum += 2 * n * diff - nu * (a + b)
        abs_sum += abs(diff)
        d_err += _EPS * abs(a) * (1.0 + abs(d) + 2.0 * nu * abs(log_half))
        if n > 2 and b < _EPS * 1e-2 * abs(diff_sum) and abs(diff) < _EPS * 1e-2 * abs(diff_sum):
            break
    pref = 0.5 * math.pi / math.sin(math.pi * nu)
    value = pref * diff_sum
    deriv = pref * dsum / x
    err = pref * ((n + 4) * _EPS * abs_sum + d_err)
    return value, deriv, err


def bessel_k(nu: float, x: float) -> EvalResult:
    """Modified Bessel function of the second kind, K_nu(x), 0 <= nu < 1."""
    _check_real_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_k needs x > 0, got {x}")
    if x <= K_SERIES_MAX_X:
        if nu < K_ZERO_ORDER_THRESHOLD:
            value, _, err = _k0_series(x)
            err += nu * nu * abs(value) * (1.0 + math.log(2.0 / x) ** 2)
        else:
            value, _, err = _k_series(nu, x)
        return EvalResult(value, err)
    value = float(sc.kv(nu, x))
    return EvalResult(value, _LIB_REL_ERR * abs(value))


def bessel_k_deriv(nu: float, x: float) -> float:
    """dK_nu/dx."""
    _check_real_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_k_deriv needs x > 0, got {x}")
    if x <= K_SERIES_MAX_X:
        if nu < K_ZERO_ORDER_THRESHOLD:
            return _k0_series(x)[1]
        return _k_series(nu, x)[1]
    return float(sc.kvp(nu, x))


# --------------------------------------------------------------------------
# Ordinary Bessel functions, real order
# --------------------------------------------------------------------------

def _lib_result(value, envelope):
    return EvalResult(value, _LIB_REL_ERR * max(abs(value), envelope))


def bessel_j(nu: float, x: float) -> EvalResult:
    _check_real_order(nu)
    if x < 0:
        raise DomainError(f"bessel_j needs x >= 0, got {x}")
    value = float(sc.jv(nu, x))
    envelope = math.sqrt(2.0 / (math.pi * x)) if x > 1 else 0.0
    return _lib_result(value, envelope)


def bessel_y(nu: float, x: float) -> EvalResult:
    _check_real_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_y needs x > 0, got {x}")
    value = float(sc.yv(nu, x))
    envelope = math.sqrt(2.0 / (math.pi * x)) if x > 1 else 0.0
    return _lib_result(value, envelope)


def bessel_j_deriv(nu: float, x: float) -> float:
    _check_real_order(nu)
    return float(sc.jvp(nu, x))


def bessel_y_deriv(nu: float, x: float) -> float:
    _check_real_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_y_deriv needs x > 0, got {x}")
    return float(sc.yvp(nu, x))


# --------------------------------------------------------------------------
# K of imaginary order
# --------------------------------------------------------------------------

def bessel_k_imag(mu: float, x: float) -> EvalResult:
    """K_{i mu}(x) for mu > 0, x > 0 (real-valued)."""
    # local import: oracle imports nothing from here, but keep module load light
    from .oracle import integrate

    if not mu > 0:
        raise DomainError(f"bessel_k_imag needs mu > 0, got {mu}")
    if not x > 0:
        raise DomainError(f"bessel_k_imag needs x > 0, got {x}")
    t_max = math.acosh(1.0 + K_IMAG_TAIL / x)

    def integrand(t):
        return math.exp(-x * (math.cosh(t) - 1.0)) * math.cos(mu * t)

    res = integrate(integrand, 0.0, t_max, tol=1e-14, rel_tol=1e-13)
    scale = math.exp(-x)
    tail = math.exp(-K_IMAG_TAIL) / x
    return EvalResult(scale * res.value, scale * (res.abs_error_estimate + tail + _EPS * t_max))


_REAL_FUNCS = {
    "bessel_k": bessel_k,
    "bessel_i": bessel_i,
    "bessel_j": bessel_j,
    "bessel_y": bessel_y,
}


def evaluate(name: str, order: float | None, x: float, imaginary: bool = False) -> EvalResult:
    """Dispatch by name; used by the ``specialfn eval`` debugging command."""
    if name == "gamma":
        return EvalResult(gamma_fn(x), _EPS * 8 * abs(gamma_fn(x)))
    if name == "digamma":
        v = digamma(x)
        return EvalResult(v, 1e-15 * max(abs(v), 1.0))
    if name == "arg_gamma_1p_i":
        return EvalResult(arg_gamma_1p_i(x), 1e-15)
    if order is None:
        raise DomainError(f"{name} requires an order")
    if name == "bessel_k" and imaginary:
        return bessel_k_imag(order, x)
    if imaginary:
        raise DomainError(f"{name} is only implemented for real order")
    try:
        func = _REAL_FUNCS[name]
    except KeyError:
        raise DomainError(f"unknown function {name!r}") from None
    return func(order, x)
