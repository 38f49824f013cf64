"""
Brute-force numerical machinery used to cross-check the closed forms.

Quadrature, bracketing root finding and polynomial extrapolation are thin,
contract-checked wrappers over scipy.  The Numerov shooting solver for the
regularized well + inverse-square tail is written out here because it is the
independent route to the matching condition.

Units throughout: hbar = 2m = 1, so the radial equation reads
chi'' = (V(r) - E) chi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate as _spi
from scipy import optimize as _spo
from scipy.interpolate import BarycentricInterpolator

from .errors import ConvergenceError, DomainError, NoRootError

#: cap on adaptive subintervals per quadrature call
MAX_SUBDIVISIONS = 500
#: cap on Brent iterations
MAX_BRENT_ITERATIONS = 200
#: default finite-difference step for ode_residual
FD_STEP = 1e-4

#: Numerov: points on the uniform interior grid [0, r0]
NUMEROV_INTERIOR_POINTS = 2000
#: Numerov: step in s = ln r on the exterior grid
NUMEROV_LOG_STEP = 1e-3
#: Numerov: exterior grid ends where kappa * r reaches this value
NUMEROV_KAPPA_RMAX = 40.0
#: Numerov: smallest x = kappa * r0 probed by the automatic bracket scan
NUMEROV_SCAN_MIN_X = 1e-10
NUMEROV_SCAN_POINTS = 48


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    subdivisions: int


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    rel_tol: float = 1e-12,
    singular_exponent: float | None = None,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod quadrature of f over (a, b).

    ``b`` may be ``math.inf``.  If ``singular_exponent`` s is given, f is
    taken to behave like (x - a)^s near a (s > -1) and the substitution
    x = a + u^p, p = 1/(1+s), removes the singularity before integrating.
    The interval is then split at a + 1 when b is infinite.
    """
    if not b > a:
        raise DomainError(f"integrate needs b > a, got ({a}, {b})")
    if singular_exponent is None:
        return _quad(f, a, b, tol, rel_tol)

    s = singular_exponent
    if not s > -1:
        raise DomainError(f"non-integrable endpoint exponent {s}")
    split = b if math.isfinite(b) else a + 1.0
    p = 1.0 / (1.0 + s)

    def g(u):
        # quadrature nodes are interior, u > 0
        return f(a + u**p) * p * u ** (p - 1.0)

    head = _quad(g, 0.0, (split - a) ** (1.0 / p), tol, rel_tol)
    if split == b:
        return head
    tail = _quad(f, split, b, tol, rel_tol)
    return QuadratureResult(
        head.value + tail.value,
        head.abs_error_estimate + tail.abs_error_estimate,
        head.subdivisions + tail.subdivisions,
    )


def _quad(f, a, b, tol, rel_tol):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", _spi.IntegrationWarning)
        out = _spi.quad(
            f, a, b, epsabs=tol, epsrel=rel_tol, limit=MAX_SUBDIVISIONS, full_output=1
        )
    value, err, info = out[:3]
    if len(out) > 3 and "maximum number of subdivisions" in str(out[3]):
        raise ConvergenceError(
            f"quadrature over ({a}, {b}) hit the cap of {MAX_SUBDIVISIONS} subdivisions"
        )
    return QuadratureResult(float(value), float(err), int(info["last"]))


def brent_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    full_output: bool = False,
):
    """Root of f in [lo, hi] by Brent's method, with |f(root)| <= tol checked.

    Returns the root, or ``(root, iterations)`` if ``full_output``.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return (lo, 0) if full_output else lo
    if fhi == 0.0:
        return (hi, 0) if full_output else hi
    if flo * fhi > 0:
        raise NoRootError(f"no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})")
    root, info = _spo.brentq(
        f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps,
        maxiter=MAX_BRENT_ITERATIONS, full_output=True, disp=False,
    )
    if not info.converged:
        raise ConvergenceError(f"brent did not converge in {MAX_BRENT_ITERATIONS} iterations")
    resid = abs(f(root))
    if resid > tol:
        raise ConvergenceError(f"|f(root)| = {resid:.3g} exceeds tol = {tol:.3g}")
    return (root, info.iterations) if full_output else root


def richardson(seq: Sequence[tuple[float, float]]) -> float:
    """Polynomial extrapolation of (h, value) samples to h = 0."""
    if len(seq) < 2:
        raise DomainError("richardson needs at least two samples")
    h = np.array([p[0] for p in seq], dtype=float)
    v = np.array([p[1] for p in seq], dtype=float)
    if len(np.unique(h)) != len(h):
        raise DomainError("richardson needs distinct step sizes")
    return float(BarycentricInterpolator(h, v)(0.0))


def ode_residual(
    chi: Callable[[float], float],
    rho_samples: Sequence[float],
    Gamma_eff: float,
    energy_sign: int,
    step: float = FD_STEP,
    scale: float | None = None,
) -> float:
    """Max scaled residual of chi'' + (energy_sign + Gamma/rho^2) chi = 0.

    chi'' is taken from five-point central differences.  Each residual is
    divided by max(|chi(rho)|, scale); scale defaults to 1e-3 times the
    largest |chi| over the samples so zeros of oscillatory chi do not blow up.
    """
    if energy_sign not in (-1, 1):
        raise DomainError("energy_sign must be -1 or +1")
    h = step
    rows = []
    for rho in rho_samples:
        f = [chi(rho + k * h) for k in (-2, -1, 0, 1, 2)]
        d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
        rows.append((abs(d2 + (energy_sign + Gamma_eff / rho**2) * f[2]), abs(f[2])))
    if scale is None:
        scale = 1e-3 * max(v for _, v in rows)
    return max(r / max(v, scale) for r, v in rows)


# --------------------------------------------------------------------------
# Numerov shooting for the well + inverse-square tail
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class NumerovSolution:
    r0: float
    gamma: float
    gamma_prime: float
    energy: float
    node_count: int
    residual: float

    @property
    def x(self) -> float:
        """Dimensionless kappa * r0."""
        return math.sqrt(-self.energy) * self.r0


def _numerov_interior(lam, r0, n):
    """chi'' = -(lam/r0^2) chi on [0, r0], chi(0) = 0.

    Returns (r0 chi'(r0)/chi(r0), node count in (0, r0)).
    """
    h = r0 / n
    g = -lam / (r0 * r0)
    c = h * h * g / 12.0
    a1 = 2.0 * (1.0 + 5.0 * c) / (1.0 - c)
    y = [0.0, h]
    nodes = 0
    for k in range(1, n + 1):  # fills y[2] .. y[n+1]; y[n+1] lies beyond r0
        y.append(a1 * y[k] - y[k - 1])
        if k < n and (y[k + 1] > 0) != (y[k] > 0):
            nodes += 1
    deriv = (1.0 - 2.0 * c) * (y[n + 1] - y[n - 1]) / (2.0 * h)
    return r0 * deriv / y[n], nodes


def _numerov_exterior(nu, kappa, r0, r_max, log_step):
    """u'' = (nu^2 + kappa^2 e^{2s}) u in s = ln r, integrated inward.

    chi = e^{s/2} u.  Returns (r0 chi'(r0)/chi(r0), sign changes seen).
    """
    s0, s_max = math.log(r0), math.log(r_max)
    m = max(4, int(math.ceil((s_max - s0) / log_step)))
    h = (s_max - s0) / m
    s = s0 + h * np.arange(-1, m + 1)  # index 0 is the extension below r0
    G = nu * nu + (kappa * np.exp(s)) ** 2
    c = (h * h / 12.0) * G
    r_end = np.exp(s[-2:])
    u = np.empty_like(s)
    u[-2:] = np.exp(-kappa * r_end - 0.5 * s[-2:])
    sign_changes = 0
    cl = c.tolist()
    ul = u.tolist()
    for i in range(len(s) - 2, 0, -1):
        ul[i - 1] = (2.0 * (1.0 + 5.0 * cl[i]) * ul[i] - (1.0 - cl[i + 1]) * ul[i + 1]) / (1.0 - cl[i - 1])
        if (ul[i - 1] > 0) != (ul[i] > 0):
            sign_changes += 1
    Gl = G.tolist()
    y_minus, y_at, y_plus = ul[0], ul[1], ul[2]
    du = ((1.0 - h * h * Gl[2] / 6.0) * y_plus - (1.0 - h * h * Gl[0] / 6.0) * y_minus) / (2.0 * h)
    return 0.5 + du / y_at, sign_changes


def numerov_mismatch(
    x: float,
    gamma: float,
    gamma_prime: float,
    r0: float = 1.0,
    r_max: float | None = None,
    interior_points: int = NUMEROV_INTERIOR_POINTS,
    log_step: float = NUMEROV_LOG_STEP,
) -> float:
    """Interior minus exterior r0 * (log derivative of chi) at kappa = x / r0."""
    return _mismatch(x, gamma, gamma_prime, r0, r_max, interior_points, log_step)[0]


def _mismatch(x, gamma, gamma_prime, r0, r_max, interior_points, log_step):
    nu = math.sqrt(0.25 - gamma)
    kappa = x / r0
    lam = gamma_prime - x * x
    if lam <= 0:
        raise DomainError(f"interior wave number imaginary at x = {x}")
    if r_max is None:
        r_max = r0 * max(2.0, NUMEROV_KAPPA_RMAX / x)
    l_in, n_in = _numerov_interior(lam, r0, interior_points)
    l_out, n_out = _numerov_exterior(nu, kappa, r0, r_max, log_step)
    return l_in - l_out, n_in + n_out


def numerov_bound_state(
    gamma: float,
    gamma_prime: float,
    r0: float,
    r_max: float | None = None,
    E_bracket: tuple[float, float] | None = None,
    interior_points: int = NUMEROV_INTERIOR_POINTS,
    log_step: float = NUMEROV_LOG_STEP,
    tol: float = 1e-10,
) -> NumerovSolution:
    """Ground state of V = -gamma'/r0^2 (r <= r0), -gamma/r^2 (r > r0), l = 0.

    Shoots outward through the well on a uniform grid and inward through the
    tail on a logarithmic grid, then matches r chi'/chi at r0.  Without
    ``E_bracket`` the energy is bracketed by scanning x = kappa r0 on a
    logarithmic grid for the first sign change of the mismatch.  ``r_max``
    defaults to NUMEROV_KAPPA_RMAX / kappa at each trial energy.
    """
    if not 0.0 <= gamma <= 0.25:
        raise DomainError(f"gamma must lie in [0, 1/4], got {gamma}")
    if not r0 > 0:
        raise DomainError(f"r0 must be > 0, got {r0}")
    if not gamma_prime > 0:
        raise NoRootError(f"no bound state for gamma' = {gamma_prime}")

    def F(x):
        return _mismatch(x, gamma, gamma_prime, r0, r_max, interior_points, log_step)[0]

    x_top = math.sqrt(gamma_prime) * (1.0 - 1e-9)
    x_bottom = max(NUMEROV_SCAN_MIN_X, math.sqrt(max(gamma_prime - math.pi**2, 0.0)) * (1 + 1e-9))
    if E_bracket is not None:
        xa, xb = sorted(r0 * math.sqrt(-e) for e in E_bracket)
    else:
        if not x_top > x_bottom:
            raise NoRootError(f"empty search range for gamma' = {gamma_prime}")
        grid = np.geomspace(x_bottom, x_top, NUMEROV_SCAN_POINTS)
        vals = [F(v) for v in grid]
        for i in range(len(grid) - 1):
            if vals[i] < 0 <= vals[i + 1]:
                xa, xb = grid[i], grid[i + 1]
                break
        else:
            raise NoRootError(
                f"no bound state found for gamma = {gamma}, gamma' = {gamma_prime}"
            )
    x = brent_root(F, xa, xb, tol=tol)
    residual, nodes = _mismatch(x, gamma, gamma_prime, r0, r_max, interior_points, log_step)
    return NumerovSolution(
        r0=r0,
        gamma=gamma,
        gamma_prime=gamma_prime,
        energy=-((x / r0) ** 2),
        node_count=nodes,
        residual=abs(residual),
    )
