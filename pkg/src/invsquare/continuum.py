"""
E > 0 continuum states orthogonal to the subcritical bound state.

    chi_1(r) = (k1 r)^{1/2} [A1 J_nu(k1 r) + B1 Y_nu(k1 r)]
    chi_0(r) = (k0 r)^{1/2} K_nu(k0 r)          (bound state, E0 = -k0^2)

Hermiticity requires the Wronskian chi_0 chi_1' - chi_1 chi_0' to vanish as
r -> 0, which fixes

    A1/B1 = [(k0/k1)^{2 nu} - cos(pi nu)] csc(pi nu)     nu != 0
          = (2/pi) ln(k0/k1)                              nu == 0

Orthogonality is checked two ways: the small-r Wronskian limit and an
Abel-regularized overlap int chi_0 chi_1 e^{-eps r} dr extrapolated to eps -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import oracle
from .boundstate import chi_nu, chi_nu_deriv, normalization_closed
from .errors import ConvergenceError, DomainError
from .specialfn import bessel_j, bessel_j_deriv, bessel_y, bessel_y_deriv

DEFAULT_EPS_LIST = (0.2, 0.1, 0.05, 0.025)
#: overlap integrals stop at k0 r = OVERLAP_K0_RMAX (bound state below e^{-OVERLAP_K0_RMAX})
OVERLAP_K0_RMAX = 50.0


@dataclass(frozen=True)
class ContinuumState:
    nu: float
    k1: float
    A1: float
    B1: float

    def __post_init__(self):
        if not 0.0 <= self.nu < 0.5:
            raise DomainError(f"nu must lie in [0, 1/2), got {self.nu}")
        if not self.k1 > 0:
            raise DomainError(f"k1 must be > 0, got {self.k1}")
        if self.A1 == 0 and self.B1 == 0:
            raise DomainError("A1 and B1 cannot both vanish")

    @classmethod
    def from_coefficients(cls, nu: float, k1: float, A1: float, B1: float) -> "ContinuumState":
        """Build a state, rescaling so that max(|A1|, |B1|) = 1."""
        m = max(abs(A1), abs(B1))
        if m == 0:
            raise DomainError("A1 and B1 cannot both vanish")
        return cls(nu, k1, A1 / m, B1 / m)

    @classmethod
    def orthogonal_to_bound(cls, nu: float, k0: float, k1: float) -> "ContinuumState":
        ratio = coefficient_ratio(nu, k0, k1)
        if math.isinf(ratio):
            return cls(nu, k1, 1.0, 0.0)
        return cls.from_coefficients(nu, k1, ratio, 1.0)

    @property
    def branch(self) -> str:
        return branch_name(self.nu)


def branch_name(nu: float) -> str:
    return "nu_zero" if nu == 0.0 else "nu_nonzero"


def coefficient_ratio(nu: float, k0: float, k1: float) -> float:
    """A1/B1 making chi_1 orthogonal to the bound state of scale k0."""
    if not 0.0 <= nu < 0.5:
        raise DomainError(f"nu must lie in [0, 1/2), got {nu}")
    if not k0 > 0:
        raise DomainError(f"k0 must be > 0, got {k0}")
    if k1 < 0:
        raise DomainError(f"k1 must be >= 0, got {k1}")
    if k1 == 0:
        return math.inf
    if nu == 0.0:
        return 2.0 / math.pi * math.log(k0 / k1)
    return ((k0 / k1) ** (2 * nu) - math.cos(math.pi * nu)) / math.sin(math.pi * nu)


def chi_continuum(state: ContinuumState, r: float) -> float:
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r}")
    z = state.k1 * r
    return math.sqrt(z) * (state.A1 * bessel_j(state.nu, z).value + state.B1 * bessel_y(state.nu, z).value)


def chi_continuum_deriv(state: ContinuumState, r: float) -> float:
    """d chi_1 / dr."""
    z = state.k1 * r
    nu = state.nu
    c = state.A1 * bessel_j(nu, z).value + state.B1 * bessel_y(nu, z).value
    dc = state.A1 * bessel_j_deriv(nu, z) + state.B1 * bessel_y_deriv(nu, z)
    return state.k1 * (0.5 * c / math.sqrt(z) + math.sqrt(z) * dc)


def chi_bound(nu: float, k0: float, r: float) -> float:
    return chi_nu(nu, k0 * r)


def chi_bound_deriv(nu: float, k0: float, r: float) -> float:
    return k0 * chi_nu_deriv(nu, k0 * r)


def bound_norm(nu: float, k0: float) -> float:
    """||chi_0|| in r-units."""
    return math.sqrt(normalization_closed(nu) / k0)


def _wronskian_parts(nu, k0, state, r):
    c0, d0 = chi_bound(nu, k0, r), chi_bound_deriv(nu, k0, r)
    c1, d1 = chi_continuum(state, r), chi_continuum_deriv(state, r)
    return c0 * d1, c1 * d0


def wronskian_boundary(nu: float, k0: float, state: ContinuumState, r: float) -> float:
    """chi_0 chi_1' - chi_1 chi_0' at radius r."""
    a, b = _wronskian_parts(nu, k0, state, r)
    return a - b


def wronskian_scale(nu: float, k0: float, state: ContinuumState, r: float) -> float:
    """|chi_0 chi_1'| + |chi_1 chi_0'|, the size of the terms that cancel in the Wronskian."""
    a, b = _wronskian_parts(nu, k0, state, r)
    return abs(a) + abs(b)


def abel_overlap(nu: float, k0: float, state: ContinuumState, eps: float) -> oracle.QuadratureResult:
    r_max = OVERLAP_K0_RMAX / (k0 + eps)

    def f(r):
        return chi_bound(nu, k0, r) * chi_continuum(state, r) * math.exp(-eps * r)

    return oracle.integrate(f, 0.0, r_max, tol=1e-13, rel_tol=1e-11)


def orthogonality_defect(
    nu: float,
    k0: float,
    state: ContinuumState,
    eps_list: Sequence[float] = DEFAULT_EPS_LIST,
) -> float:
    """Abel-regularized <chi_0|chi_1>, polynomially extrapolated to eps -> 0."""
    if any(e <= 0 for e in eps_list) or list(eps_list) != sorted(eps_list, reverse=True):
        raise DomainError("eps_list must be a decreasing sequence of positive numbers")
    samples = []
    for eps in eps_list:
        try:
            res = abel_overlap(nu, k0, state, eps)
        except ConvergenceError as exc:
            raise ConvergenceError(f"overlap quadrature failed at eps = {eps}: {exc}") from exc
        samples.append((eps, res.value))
    return oracle.richardson(samples)
