"""
Coupling parameters and regime classification for V = -lambda / r^2.

Works directly in the dimensionless coupling gamma = 2 m lambda / hbar^2.
The effective coupling after removing the centrifugal term is
Gamma = gamma - l(l+1), and the Bessel order is

    nu = sqrt((l + 1/2)^2 - gamma)          if Gamma <= 1/4  (real)
    mu = sqrt(gamma - (l + 1/2)^2)          if Gamma >  1/4  (order i*mu)

Boundary comparisons are exact float comparisons on the inputs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError
from .specialfn import Order, OrderKind


class Regime(enum.Enum):
    BOUND_ALLOWED = "BoundAllowed"
    TRANSITIONAL = "Transitional"
    NO_BOUND = "NoBound"
    HYPERCRITICAL = "Hypercritical"


@dataclass(frozen=True)
class CouplingParams:
    ell: int
    gamma: float
    Gamma_eff: float
    order: Order | None  # None only when nu >= 1 (deep NoBound)
    nu_or_mu: float
    regime: Regime

    @property
    def nu(self) -> float:
        """Real order; raises for hypercritical couplings."""
        if self.regime is Regime.HYPERCRITICAL:
            raise DomainError("hypercritical coupling has imaginary order")
        return self.nu_or_mu

    @property
    def mu(self) -> float:
        if self.regime is not Regime.HYPERCRITICAL:
            raise DomainError("subcritical coupling has real order")
        return self.nu_or_mu


def _regime(ell, gamma):
    lower = ell * (ell + 1)
    upper = (ell + 0.5) ** 2
    if gamma > upper:
        return Regime.HYPERCRITICAL
    if gamma == upper:
        return Regime.TRANSITIONAL
    if gamma > lower:
        return Regime.BOUND_ALLOWED
    return Regime.NO_BOUND


def make_params(ell: int, gamma: float) -> CouplingParams:
    if isinstance(ell, bool) or int(ell) != ell or ell < 0:
        raise DomainError(f"ell must be a nonnegative integer, got {ell}")
    ell = int(ell)
    if not gamma > 0:
        raise DomainError(f"gamma must be > 0 (attractive potential), got {gamma}")
    Gamma_eff = gamma - ell * (ell + 1)
    excess = (ell + 0.5) ** 2 - gamma
    regime = _regime(ell, gamma)
    if excess >= 0:
        value = math.sqrt(excess)
        order = Order(OrderKind.REAL, value) if value < 1.0 else None
    else:
        value = math.sqrt(-excess)
        order = Order(OrderKind.IMAGINARY, value)
    return CouplingParams(ell, float(gamma), Gamma_eff, order, value, regime)


def classify_regime(params: CouplingParams) -> Regime:
    return _regime(params.ell, params.gamma)


class FluxKind(enum.Enum):
    ZERO = "Zero"
    FINITE = "Finite"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class FluxLimit:
    kind: FluxKind
    value: float | None = None


def flux_limit(nu: float) -> FluxLimit:
    """r -> 0 limit of -4 pi (1/2 + nu) r^(1/2 - nu), the surface flux of grad psi."""
    if nu < 0:
        raise DomainError(f"nu must be >= 0, got {nu}")
    if nu < 0.5:
        return FluxLimit(FluxKind.ZERO, 0.0)
    if nu == 0.5:
        return FluxLimit(FluxKind.FINITE, -4.0 * math.pi)
    return FluxLimit(FluxKind.DIVERGENT)


def bound_state_allowed(params: CouplingParams) -> bool:
    """True iff l(l+1) < gamma <= (l+1/2)^2."""
    return params.regime in (Regime.BOUND_ALLOWED, Regime.TRANSITIONAL)
