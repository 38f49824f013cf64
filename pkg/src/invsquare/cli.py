"""
Command-line entry point.

Single results are printed as one JSON object, tables as CSV.  Exit codes:
0 success, 1 computation error (JSON error object on stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import json
import math
import sys
from typing import Any

from . import boundstate, continuum, coupling, hypercritical, oracle, specialfn, verify, wellmatch
from .errors import ConvergenceError, DomainError, NoRootError, PoleError

COMPUTATION_ERRORS = (
    DomainError,
    PoleError,
    NoRootError,
    ConvergenceError,
    hypercritical.LadderRangeError,
)


def _plain(obj: Any) -> Any:
    """JSON-ready copy: enums by value, non-finite floats as strings."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _emit(obj, out):
    out.write(json.dumps(_plain(obj), allow_nan=False) + "\n")


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_regime(args, out):
    p = coupling.make_params(args.ell, args.gamma)
    _emit({"ell": p.ell, "gamma": p.gamma, "Gamma_eff": p.Gamma_eff, "nu_or_mu": p.nu_or_mu,
           "regime": p.regime}, out)


def _cmd_boundstate(args, out):
    state = boundstate.BoundState(coupling.make_params(args.ell, args.gamma), args.kappa)
    if args.checks:
        _emit(boundstate.energy_balance(state.nu, state.kappa), out)
    else:
        rho = args.rho if args.rho is not None else 1.0
        _emit({"nu": state.nu, "kappa": state.kappa, "rho": rho, "chi": boundstate.chi(state, rho)}, out)


def _cmd_gamma_prime(args, out):
    if args.nu is not None:
        _emit(wellmatch.gamma_prime_limit(args.nu), out)
    else:
        _emit(wellmatch.gamma_prime_from_gamma(args.gamma), out)


def _cmd_fig1(args, out):
    rows = wellmatch.fig1_table(args.points)
    if args.out == "-":
        wellmatch.write_fig1_csv(rows, out)
    else:
        with open(args.out, "w", newline="") as fh:
            wellmatch.write_fig1_csv(rows, fh)


def _cmd_fit(args, out):
    _emit(wellmatch.fit_curve(args.degree, args.grid), out)


def _cmd_continuum(args, out):
    result = {
        "ratio": continuum.coefficient_ratio(args.nu, args.k0, args.k1),
        "branch": continuum.branch_name(args.nu),
    }
    if args.defect:
        state = continuum.ContinuumState.orthogonal_to_bound(args.nu, args.k0, args.k1)
        result["defect"] = continuum.orthogonality_defect(args.nu, args.k0, state)
    _emit(result, out)


def _cmd_spectrum(args, out):
    if args.zeros:
        if args.rho_max is None:
            raise DomainError("--zeros needs --rho-max")
        pred = hypercritical.predicted_zeros(args.mu, args.rho_min, args.rho_max)
        got = hypercritical.computed_zeros(args.mu, args.rho_min, args.rho_max)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "predicted", "computed", "rel_diff"])
        for i in range(max(len(pred), len(got))):
            p = pred[i] if i < len(pred) else math.nan
            g = got[i] if i < len(got) else math.nan
            writer.writerow([i] + ["%.10g" % v for v in (p, g, g / p - 1.0)])
        return
    for name in ("e0", "n_min", "n_max"):
        if getattr(args, name) is None:
            raise DomainError(f"spectrum needs --{name.replace('_', '-')} (or --zeros)")
    _emit(hypercritical.ladder(args.mu, args.e0, args.n_min, args.n_max), out)


def _cmd_oracle(args, out):
    sol = oracle.numerov_bound_state(args.gamma, args.gamma_prime, args.r0, r_max=args.r_max)
    result = _plain(sol)
    result["x"] = sol.x
    _emit(result, out)


def _cmd_verify(args, out):
    results = verify.run_all(verbose=args.verbose, echo=lambda s: out.write(s + "\n"))
    failed = [r.number for r in results if not r.passed]
    out.write(f"{len(results) - len(failed)}/{len(results)} criteria passed\n")
    return 1 if failed else 0


def _cmd_specialfn(args, out):
    res = specialfn.evaluate(args.name, args.order, args.x, imaginary=args.imaginary)
    _emit({"value": res.value, "abs_error_estimate": res.abs_error_estimate}, out)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invsquare", description="Inverse-square potential toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("regime", help="classify a coupling")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.set_defaults(func=_cmd_regime)

    p = sub.add_parser("boundstate", help="subcritical bound state value or closed-form checks")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--rho", type=float)
    g.add_argument("--checks", action="store_true")
    p.set_defaults(func=_cmd_boundstate)

    p = sub.add_parser("gamma-prime", help="r0 -> 0 well strength for a given nu or gamma")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--nu", type=float)
    g.add_argument("--gamma", type=float)
    p.set_defaults(func=_cmd_gamma_prime)

    p = sub.add_parser("fig1", help="gamma' versus 1/2 - nu as CSV")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=_cmd_fig1)

    p = sub.add_parser("fit", help="polynomial fit of gamma'(1/2 - nu)")
    p.add_argument("--degree", type=int, choices=(1, 2), required=True)
    p.add_argument("--grid", type=int, default=100, help="uniform grid size (default 100)")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("continuum", help="continuum coefficient ratio and orthogonality defect")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--k0", type=float, required=True)
    p.add_argument("--k1", type=float, required=True)
    p.add_argument("--defect", action="store_true")
    p.set_defaults(func=_cmd_continuum)

    p = sub.add_parser("spectrum", help="hypercritical energy ladder or near-origin zeros")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--e0", type=float)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--zeros", action="store_true")
    p.add_argument("--rho-max", type=float)
    p.add_argument("--rho-min", type=float, default=1e-6)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("oracle", help="brute-force oracles")
    osub = p.add_subparsers(dest="oracle_command", required=True, metavar="ORACLE")
    q = osub.add_parser("numerov", help="Numerov ground state of the regularized potential")
    q.add_argument("--gamma", type=float, required=True)
    q.add_argument("--gamma-prime", type=float, required=True)
    q.add_argument("--r0", type=float, required=True)
    q.add_argument("--r-max", type=float)
    q.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("specialfn")
    ssub = p.add_subparsers(dest="specialfn_command", required=True, metavar="ACTION")
    q = ssub.add_parser("eval", help="evaluate a special function")
    q.add_argument("--name", required=True,
                   choices=("bessel_k", "bessel_i", "bessel_j", "bessel_y", "gamma", "digamma", "arg_gamma_1p_i"))
    q.add_argument("--order", type=float)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--imaginary", action="store_true", help="order is i*ORDER (bessel_k only)")
    q.set_defaults(func=_cmd_specialfn)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args, out)
    except COMPUTATION_ERRORS as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        where = getattr(exc, "where", None)
        if where is not None:
            err["where"] = where
        _emit(err, out)
        return 1
    return code or 0


def run(argv: list[str] | None = None) -> int:
    """Like main(), but also returns 2 on usage errors instead of raising SystemExit."""
    try:
        return main(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2


if __name__ == "__main__":
    sys.exit(main())
