"""
Matching the l = 0 exterior solution to an interior square well.

Inside r < r0 the potential is -gamma'/r0^2 and r psi = sin(Lambda^{1/2} r / r0)
with Lambda = gamma' - (kappa r0)^2.  Equating r d/dr ln(r psi) on both sides:

    finite r0:   1/2 + x K_nu'(x)/K_nu(x) = Lambda^{1/2} cot Lambda^{1/2},  x = kappa r0
    r0 -> 0:     1/2 - nu                 = gamma'^{1/2} cot gamma'^{1/2}

The second relation fixes gamma' from gamma independently of the energy.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, NamedTuple

import numpy as np

from .errors import DomainError, NoRootError, PoleError
from .oracle import brent_root
from .specialfn import bessel_k, bessel_k_deriv

#: sqrt(gamma') bracket for the r0 -> 0 condition; s cot s is 0.560 and -0.047 at the ends
SQRT_GP_BRACKET = (1.1, 1.6)
#: smallest x = kappa r0 tried by finite_r0_match
FINITE_R0_X_MIN = 1e-100
#: residual tolerance on the matching equations
MATCH_TOL = 1e-12
#: grid used for the linear-fit column of fig1_table
FIG1_FIT_GRID = 100


@dataclass(frozen=True)
class WellMatchResult:
    gamma: float
    nu: float
    gamma_prime: float
    residual: float
    iterations: int


@dataclass(frozen=True)
class FitResult:
    degree: int
    coefficients: list[float]
    max_abs_deviation: float

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")

    def __call__(self, half_minus_nu):
        return np.polynomial.polynomial.polyval(half_minus_nu, self.coefficients)

    def in_terms_of_nu(self) -> tuple[float, float]:
        """Degree-1 fit rewritten as (intercept, slope) in nu."""
        if self.degree != 1:
            raise ValueError("only defined for the linear fit")
        c0, c1 = self.coefficients
        return c0 + 0.5 * c1, -c1


class Fig1Row(NamedTuple):
    half_minus_nu: float
    gamma: float
    gamma_prime: float
    gamma_prime_linear_fit: float


def matching_rhs(Lambda: float) -> float:
    """Lambda^{1/2} cot Lambda^{1/2}."""
    if not Lambda > 0:
        raise DomainError(f"Lambda must be > 0, got {Lambda}")
    s = math.sqrt(Lambda)
    n = round(s / math.pi)
    if n > 0 and abs(s - n * math.pi) < 1e-12 * s:
        raise PoleError(f"cot pole at sqrt(Lambda) = {n} pi", where=Lambda)
    return s / math.tan(s)


def nu_from_gamma(gamma: float) -> float:
    """nu = sqrt(1/4 - gamma) for l = 0; gamma = 0 gives the free-exterior nu = 1/2."""
    if not 0.0 <= gamma <= 0.25:
        raise DomainError(f"l = 0 matching needs 0 <= gamma <= 1/4, got {gamma}")
    return math.sqrt(0.25 - gamma)


def gamma_prime_limit(nu: float) -> WellMatchResult:
    """gamma' solving gamma'^{1/2} cot gamma'^{1/2} = 1/2 - nu."""
    if not 0.0 <= nu <= 0.5:
        raise DomainError(f"nu must lie in [0, 1/2], got {nu}")
    level = 0.5 - nu

    def f(s):
        return s / math.tan(s) - level

    s, iterations = brent_root(f, *SQRT_GP_BRACKET, tol=MATCH_TOL, full_output=True)
    gp = s * s
    residual = abs(math.sqrt(gp) / math.tan(math.sqrt(gp)) - level)
    return WellMatchResult(
        gamma=0.25 - nu * nu, nu=nu, gamma_prime=gp, residual=residual, iterations=iterations
    )


def gamma_prime_from_gamma(gamma: float) -> WellMatchResult:
    return gamma_prime_limit(nu_from_gamma(gamma))


def exterior_log_derivative(nu: float, x: float) -> float:
    """r d/dr ln chi at kappa r = x for chi = rho^{1/2} K_nu(rho)."""
    return 0.5 + x * bessel_k_deriv(nu, x) / bessel_k(nu, x).value


def finite_r0_match(gamma: float, gamma_prime: float, tol: float = MATCH_TOL) -> float:
    """x = kappa r0 at which the exterior and well solutions match exactly."""
    nu = nu_from_gamma(gamma)
    if not gamma_prime > 0:
        raise DomainError(f"gamma' must be > 0, got {gamma_prime}")

    def mismatch(x):
        return exterior_log_derivative(nu, x) - matching_rhs(gamma_prime - x * x)

    x_hi = math.sqrt(gamma_prime) * (1.0 - 1e-12)
    x_lo = max(FINITE_R0_X_MIN, math.sqrt(max(gamma_prime - math.pi**2, 0.0)) * (1.0 + 1e-12))
    if not x_hi > x_lo:
        raise NoRootError(f"empty bracket for gamma' = {gamma_prime}")
    if mismatch(x_lo) <= 0.0:
        raise NoRootError(
            f"no matching x > 0: gamma' = {gamma_prime} is at or below the "
            f"r0 -> 0 value {gamma_prime_limit(nu).gamma_prime}"
        )
    return brent_root(mismatch, x_lo, x_hi, tol=tol)


def gamma_prime_grid(grid_size: int) -> tuple[np.ndarray, np.ndarray]:
    """(1/2 - nu, gamma') on a uniform grid of 1/2 - nu over [0, 1/2]."""
    h = np.linspace(0.0, 0.5, grid_size)
    gp = np.array([gamma_prime_limit(0.5 - v).gamma_prime for v in h])
    return h, gp


def fit_curve(degree: int, grid_size: int = 100) -> FitResult:
    """Least-squares polynomial in (1/2 - nu) through gamma'(nu), constant first."""
    if degree not in (1, 2):
        raise DomainError(f"degree must be 1 or 2, got {degree}")
    if grid_size < 20:
        raise DomainError(f"grid_size must be >= 20, got {grid_size}")
    h, gp = gamma_prime_grid(grid_size)
    coef = np.polynomial.polynomial.polyfit(h, gp, degree)
    dev = np.max(np.abs(np.polynomial.polynomial.polyval(h, coef) - gp))
    return FitResult(degree, [float(c) for c in coef], float(dev))


def fig1_table(n_points: int) -> list[Fig1Row]:
    if n_points < 2:
        raise DomainError(f"n_points must be >= 2, got {n_points}")
    line = fit_curve(1, FIG1_FIT_GRID)
    h, gp = gamma_prime_grid(n_points)
    rows = []
    for hv, g in zip(h, gp):
        nu = 0.5 - hv
        rows.append(Fig1Row(float(hv), 0.25 - nu * nu, float(g), float(line(hv))))
    return rows


def write_fig1_csv(rows: list[Fig1Row], stream: IO[str]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(Fig1Row._fields)
    for row in rows:
        writer.writerow(["%.10g" % v for v in row])
