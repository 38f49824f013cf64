"""
Strong coupling, Gamma > 1/4: imaginary order i*mu with mu = sqrt(Gamma - 1/4).

Bound states chi = rho^{1/2} K_{i mu}(rho) exist for every kappa; demanding a
common near-origin phase leaves the geometric ladder

    E_n = -|E0| exp(2 pi n / mu),   n integer,

with |E0| free.  Index n grows toward E -> -infinity; n -> -infinity
accumulates at E = 0.  Near the origin

    K_{i mu}(rho) ~ -pi/|Gamma(1 + i mu)| csch(pi mu) sin(mu ln(rho/2) - Phi_mu),
    Phi_mu = arg Gamma(1 + i mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .oracle import brent_root
from .specialfn import abs_gamma_1p_i, arg_gamma_1p_i, bessel_k_imag

#: exp() arguments beyond this are reported as out of range
MAX_EXPONENT = 700.0
#: chi_near_origin_hyper is only offered for rho up to this value
NEAR_ORIGIN_RHO_MAX = 0.05


class LadderRangeError(OverflowError):
    """A requested ladder level overflows double precision."""


@dataclass(frozen=True)
class SpectrumLadder:
    mu: float
    E0_magnitude: float
    n_min: int
    n_max: int
    energies: list[float]

    def energy(self, n: int) -> float:
        return self.energies[n - self.n_min]


def ladder(mu: float, E0: float, n_min: int, n_max: int) -> SpectrumLadder:
    if not mu > 0:
        raise DomainError(f"mu must be > 0, got {mu}")
    if not E0 > 0:
        raise DomainError(f"E0 must be > 0, got {E0}")
    if n_min > n_max:
        raise DomainError(f"n_min = {n_min} exceeds n_max = {n_max}")
    E0 = float(E0)
    step = 2.0 * math.pi / mu
    ratio = math.exp(step) if step <= MAX_EXPONENT else math.inf  # only n = 0 survives otherwise
    log_e0 = math.log(E0)
    energies = []
    for n in range(n_min, n_max + 1):
        exponent = step * n
        if abs(exponent) > MAX_EXPONENT or abs(exponent + log_e0) > MAX_EXPONENT:
            raise LadderRangeError(f"level n = {n} has exponent {exponent:.4g}, out of range")
        # powers of one rounded ratio keep consecutive quotients within a few ulp
        energies.append(-E0 * ratio**n if n else -E0)
    return SpectrumLadder(mu, E0, n_min, n_max, energies)


def chi_hyper(mu: float, rho: float) -> float:
    """rho^{1/2} K_{i mu}(rho)."""
    if not rho > 0:
        raise DomainError(f"rho must be > 0, got {rho}")
    return math.sqrt(rho) * bessel_k_imag(mu, rho).value


def natural_amplitude(mu: float) -> float:
    """Amplitude making chi_near_origin_hyper the small-rho limit of chi_hyper."""
    return -math.pi / abs_gamma_1p_i(mu)


def near_origin_phase(mu: float, rho: float) -> float:
    return mu * math.log(0.5 * rho) - arg_gamma_1p_i(mu)


def chi_near_origin_hyper(mu: float, rho: float, amplitude: float | None = None) -> float:
    """amplitude * rho^{1/2} csch(pi mu) sin(mu ln(rho/2) - Phi_mu).

    ``amplitude`` defaults to natural_amplitude(mu).
    """
    if not mu > 0:
        raise DomainError(f"mu must be > 0, got {mu}")
    if not 0 < rho <= NEAR_ORIGIN_RHO_MAX:
        raise DomainError(f"near-origin form needs 0 < rho <= {NEAR_ORIGIN_RHO_MAX}, got {rho}")
    if amplitude is None:
        amplitude = natural_amplitude(mu)
    t = math.pi * mu
    csch = 2.0 * math.exp(-t) / -math.expm1(-2.0 * t)
    return amplitude * math.sqrt(rho) * csch * math.sin(near_origin_phase(mu, rho))


def predicted_zeros(mu: float, rho_lo: float, rho_hi: float) -> list[float]:
    """rho_m with mu ln(rho_m/2) - Phi_mu = m pi, inside (rho_lo, rho_hi)."""
    phi = arg_gamma_1p_i(mu)
    m_lo = math.ceil((mu * math.log(0.5 * rho_lo) - phi) / math.pi)
    m_hi = math.floor((mu * math.log(0.5 * rho_hi) - phi) / math.pi)
    zeros = [2.0 * math.exp((phi + m * math.pi) / mu) for m in range(m_lo, m_hi + 1)]
    return [z for z in zeros if rho_lo < z < rho_hi]


def computed_zeros(mu: float, rho_lo: float, rho_hi: float, samples_per_unit_phase: int = 16) -> list[float]:
    """Zeros of chi_hyper in (rho_lo, rho_hi) by sign scan in ln rho plus Brent."""
    if not 0 < rho_lo < rho_hi:
        raise DomainError("need 0 < rho_lo < rho_hi")
    span = math.log(rho_hi / rho_lo)
    n = max(32, int(samples_per_unit_phase * (1.0 + mu) * span))
    grid = np.geomspace(rho_lo, rho_hi, n)
    vals = [chi_hyper(mu, r) for r in grid]
    zeros = []
    f = lambda r: bessel_k_imag(mu, r).value  # noqa: E731
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            zeros.append(float(a))
        elif fa * fb < 0:
            zeros.append(brent_root(f, float(a), float(b), tol=1e-10))
    return zeros


def phase_defect(mu: float, energy_n: float, energy_m: float) -> float:
    """Distance of mu ln(kappa_n / kappa_m) from the nearest multiple of pi."""
    if energy_n >= 0 or energy_m >= 0:
        raise DomainError("bound-state energies must be negative")
    d = 0.5 * mu * math.log(energy_n / energy_m)
    return abs(math.remainder(d, math.pi))


def orthogonality_phase_check(mu: float, n: int, m: int, E0: float = 1.0) -> float:
    """Same-phase defect between ladder levels n and m (0 for an exact ladder)."""
    if n == m:
        raise DomainError("levels must differ")
    lad = ladder(mu, E0, min(n, m), max(n, m))
    return phase_defect(mu, lad.energy(n), lad.energy(m))
