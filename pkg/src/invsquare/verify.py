"""
Acceptance suite: each check_* function runs one criterion and returns a
CriterionResult.  Used by ``invsquare verify`` and tests/test_acceptance.py.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import boundstate, continuum, coupling, hypercritical, oracle, wellmatch


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    runtime: float = 0.0
    runtime_limit: float | None = None
    details: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        limit = f" (limit {self.runtime_limit:g} s)" if self.runtime_limit else ""
        return f"[{status}] {self.number}. {self.name}: {self.runtime:.2f} s{limit}"


class _Checker:
    """Collects named comparisons; any failure fails the criterion."""

    def __init__(self):
        self.ok = True
        self.details = []

    def close(self, label, value, target, abs_tol=None, rel_tol=None):
        err = abs(value - target)
        if abs_tol is not None:
            good = err <= abs_tol
            what = f"|err| {err:.3g} <= {abs_tol:g}"
        else:
            rel = err / abs(target)
            good = rel <= rel_tol
            what = f"rel {rel:.3g} <= {rel_tol:g}"
        self.record(good, f"{label}: {value:.12g} vs {target:.12g}, {what}")

    def record(self, good, text):
        self.ok &= bool(good)
        self.details.append(("ok   " if good else "FAIL ") + text)


def _run(number, name, limit, body: Callable[[_Checker], None]) -> CriterionResult:
    chk = _Checker()
    t0 = time.perf_counter()
    body(chk)
    dt = time.perf_counter() - t0
    if limit is not None:
        chk.record(dt < limit, f"runtime {dt:.2f} s < {limit:g} s")
    return CriterionResult(number, name, chk.ok, dt, limit, chk.details)


# --------------------------------------------------------------------------

def check_gamma_prime_endpoints() -> CriterionResult:
    def body(c):
        c.close("gamma'(nu=0)", wellmatch.gamma_prime_limit(0.0).gamma_prime, 1.35853, abs_tol=1e-4)
        c.close("gamma'(nu=1/2)", wellmatch.gamma_prime_limit(0.5).gamma_prime, 2.46740, abs_tol=1e-4)

    return _run(1, "gamma' endpoints", 1.0, body)


def check_bracket_roots() -> CriterionResult:
    def body(c):
        r1 = oracle.brent_root(lambda x: x / math.tan(x) - 0.5, 1.0, 1.5)
        r2 = oracle.brent_root(lambda x: x / math.tan(x), 1.4, 1.6)
        c.close("x cot x = 1/2", r1, 1.16556, abs_tol=1e-5)
        c.close("x cot x = 0", r2, 1.570796, abs_tol=1e-6)

    return _run(2, "bracket roots", 1.0, body)


def check_fit_reproduction() -> CriterionResult:
    def body(c):
        lin = wellmatch.fit_curve(1, 100)
        quad = wellmatch.fit_curve(2, 100)
        for i, target in enumerate((2.4867, -2.2265)):
            c.close(f"linear c{i}", lin.coefficients[i], target, rel_tol=0.02)
        for label, value, target in zip(("nu form intercept", "nu form slope"), lin.in_terms_of_nu(), (1.3734, 2.2265)):
            c.close(label, value, target, rel_tol=0.02)
        for i, target in enumerate((2.4671, -1.9905, -0.4520)):
            c.close(f"quadratic c{i}", quad.coefficients[i], target, rel_tol=0.05)

    return _run(3, "fit reproduction", 5.0, body)


def check_closed_vs_quadrature() -> CriterionResult:
    def body(c):
        for nu in (0.1, 0.25, 0.4):
            c.close(f"normalization nu={nu}", boundstate.normalization_quadrature(nu).value,
                    boundstate.normalization_closed(nu), rel_tol=1e-7)
            c.close(f"Hardy nu={nu}", boundstate.hardy_quadrature(nu).value,
                    boundstate.hardy_integral_closed(nu), rel_tol=1e-7)
            c.close(f"boundary nu={nu}", boundstate.boundary_term_numeric(nu),
                    boundstate.boundary_term_closed(nu), rel_tol=1e-7)
        n0 = boundstate.normalization_closed(0.0)
        c.record(n0 == 0.5, f"normalization nu=0: {n0!r} == 0.5")

    return _run(4, "closed form vs quadrature", 10.0, body)


def check_energy_balance() -> CriterionResult:
    def body(c):
        for nu in np.linspace(0.01, 0.99, 99):
            for kappa in (0.5, 1.0, 3.0):
                chk = boundstate.energy_balance(float(nu), kappa)
                c.ok &= chk.consistency_residual <= 1e-10 and chk.energy_norm < 0
                if not (chk.consistency_residual <= 1e-10 and chk.energy_norm < 0):
                    c.record(False, f"nu={nu:.2f} kappa={kappa}: residual {chk.consistency_residual:.3g}, "
                                    f"E<psi|psi> {chk.energy_norm:.6g}")
        c.record(c.ok, "residual <= 1e-10 and E<psi|psi> < 0 on 99 nu x 3 kappa")

    return _run(5, "energy balance", None, body)


def check_cross_oracle_matching() -> CriterionResult:
    def body(c):
        for nu in (0.1, 0.25, 0.4):
            gamma = 0.25 - nu * nu
            gp_star = wellmatch.gamma_prime_limit(nu).gamma_prime
            for delta in (0.2, 0.05):
                gp = gp_star + delta
                x_exact = wellmatch.finite_r0_match(gamma, gp)
                xs = [oracle.numerov_bound_state(gamma, gp, r0).x for r0 in (0.5, 1.0, 2.0)]
                c.close(f"nu={nu} delta={delta} numerov x", xs[1], x_exact, rel_tol=1e-6)
                spread = (max(xs) - min(xs)) / x_exact
                c.record(spread <= 1e-6, f"nu={nu} delta={delta} r0 spread {spread:.3g} <= 1e-6")
            deltas = (0.2, 0.05, 0.0125, 0.003125, 0.00078125)
            seq = [wellmatch.finite_r0_match(gamma, gp_star + d) for d in deltas]
            mono = all(a > b for a, b in zip(seq, seq[1:]))
            c.record(mono and seq[-1] < seq[0] * 0.1,
                     f"nu={nu} x(delta) decreasing toward 0: " + ", ".join(f"{v:.4g}" for v in seq))

    return _run(6, "cross-oracle matching", 60.0, body)


def check_continuum_orthogonality() -> CriterionResult:
    def body(c):
        for nu, k0, k1 in ((0.25, 1.0, 2.0), (0.0, 1.0, 3.0), (0.4, 1.0, 0.5)):
            bound = 1e-4 * continuum.bound_norm(nu, k0)
            good = continuum.ContinuumState.orthogonal_to_bound(nu, k0, k1)
            d = continuum.orthogonality_defect(nu, k0, good)
            c.record(abs(d) <= bound, f"compliant ({nu},{k0},{k1}): |defect| {abs(d):.3g} <= {bound:.3g}")
            j_only = continuum.ContinuumState(nu, k1, 1.0, 0.0)
            d0 = continuum.orthogonality_defect(nu, k0, j_only)
            c.record(abs(d0) >= 10 * bound, f"B1=0 ({nu},{k0},{k1}): |defect| {abs(d0):.3g} >= {10 * bound:.3g}")
        for k0, k1 in ((1.0, 2.0), (1.0, 3.0), (2.0, 0.5)):
            a = continuum.coefficient_ratio(1e-4, k0, k1)
            b = continuum.coefficient_ratio(0.0, k0, k1)
            c.close(f"branch seam k0={k0} k1={k1}", a, b, rel_tol=1e-3)

    return _run(7, "continuum orthogonality", None, body)


def check_hypercritical_ladder() -> CriterionResult:
    def body(c):
        for mu in (0.3, 0.5, 1.0, 2.5):
            lad = hypercritical.ladder(mu, 1.0, -5, 5)
            target = math.exp(2 * math.pi / mu)
            worst = max(abs(b / a / target - 1.0) for a, b in zip(lad.energies, lad.energies[1:]))
            c.record(worst <= 8 * np.finfo(float).eps, f"mu={mu} ladder ratio rel err {worst:.3g}")
        for mu in (0.5, 1.0):
            lo, hi = 1e-6, 1e-2
            pred = hypercritical.predicted_zeros(mu, lo, hi)
            got = hypercritical.computed_zeros(mu, lo, hi)
            if len(pred) != len(got) or not pred:
                c.record(False, f"mu={mu}: {len(got)} zeros found, {len(pred)} predicted")
                continue
            worst = max(abs(g / p - 1.0) for g, p in zip(got, pred))
            c.record(worst <= 0.01, f"mu={mu}: {len(got)} zeros, worst rel deviation {worst:.3g} <= 0.01")
        worst = max(
            hypercritical.orthogonality_phase_check(mu, n, m)
            for mu in (0.2, 0.7, 1.0, 3.0)
            for n, m in ((0, 1), (-2, 3), (-7, 4), (5, -3))
        )
        c.record(worst <= 1e-10, f"same-phase defect worst {worst:.3g} <= 1e-10")

    return _run(8, "hypercritical ladder", None, body)


def check_admissibility_partition() -> CriterionResult:
    def body(c):
        bad = 0
        total = 0
        for ell in (0, 1, 2):
            lo, hi = ell * (ell + 1), (ell + 0.5) ** 2
            grid = np.concatenate([np.linspace(1e-3, 8.0, 1000), [lo, hi]])
            for g in grid:
                if g <= 0:
                    continue
                p = coupling.make_params(ell, float(g))
                total += 1
                expect = lo < g <= hi
                if coupling.bound_state_allowed(p) != expect:
                    bad += 1
                if p.regime is not coupling.Regime.HYPERCRITICAL:
                    zero = coupling.flux_limit(p.nu).kind is coupling.FluxKind.ZERO
                    if zero != (p.nu < 0.5):
                        bad += 1
        c.record(bad == 0, f"{total} couplings, {bad} mismatches")

    return _run(9, "admissibility partition", None, body)


CRITERIA = (
    check_gamma_prime_endpoints,
    check_bracket_roots,
    check_fit_reproduction,
    check_closed_vs_quadrature,
    check_energy_balance,
    check_cross_oracle_matching,
    check_continuum_orthogonality,
    check_hypercritical_ladder,
    check_admissibility_partition,
)


def run_all(verbose: bool = False, echo=print) -> list[CriterionResult]:
    results = []
    for check in CRITERIA:
        res = check()
        results.append(res)
        if echo is not None:
            echo(res.line())
            if verbose:
                for d in res.details:
                    echo("    " + d)
    return results
