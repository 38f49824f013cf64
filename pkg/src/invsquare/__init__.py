"""
Bound and continuum states of the attractive inverse-square potential
V = -lambda / r^2, with hbar = 2m = 1 throughout.

Modules
-------
specialfn      Bessel functions K, I, J, Y of real order, K of imaginary order, gamma family
coupling       coupling parameters, regime classification, origin flux
boundstate     subcritical eigenfunction and its closed-form integrals
wellmatch      matching to an interior square well, gamma'(nu) and its fits
continuum      E > 0 states orthogonal to the bound state
hypercritical  geometric ladder and near-origin oscillation for Gamma > 1/4
oracle         quadrature, root finding, extrapolation, Numerov shooting
"""

from .errors import ConvergenceError, DomainError, NoRootError, PoleError

__version__ = "0.1.0"

__all__ = ["ConvergenceError", "DomainError", "NoRootError", "PoleError", "__version__"]
