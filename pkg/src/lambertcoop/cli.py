"""Command-line front end.

Subcommands::

    lambert   evaluate W_0 / W_{-1} at one point
    bounds    bound family F(u, c) against W_{-1}(-exp(-u-1))
    decide    cooperation verdict for one link budget
    sweep     tables for the branch plot, the bound plot and the region plots
    simulate  Monte Carlo outage estimate next to its closed form

SNR arguments and outputs are in dB unless ``--linear`` is given. Exit
status: 0 on success, 2 for domain or usage errors, 3 when W fails to
converge.

Column order (csv/json) is fixed:

* lambert: z, branch, w, residual, iterations
* bounds: u, z, lower_c1, lower_c3_4, w_m1, upper_c2_3, barry
* decide: theta, theta_prime, gamma_bar, verdict, exact_threshold,
  safe_threshold, avoid_threshold, p_nc, p_c, min_gamma, bounds_certified
* sweep (variable z): z, w0, w_m1
* sweep (variable u): same columns as ``bounds``
* sweep (gamma_bar / theta): gamma_bar, theta, exact_threshold,
  safe_threshold, avoid_threshold
* simulate: mode, threshold, gamma_bar, n_trials, seed, outage_count,
  estimate, std_error, analytic, z_score
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import bounds as bd
from .cooperation import (
    LinkBudget,
    assess,
    avoid_threshold,
    db_to_linear,
    exact_threshold,
    linear_to_db,
    min_gamma,
    safe_threshold,
)
from .errors import ConvergenceError, DomainError
from .lambert import Branch, lambert_w, wm1_exp
from .montecarlo import Mode, SimSpec, analytic_outage, simulate

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_CONVERGENCE = 3

SIG_DIGITS = 12


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return format(value, f".{SIG_DIGITS}g")
    return str(value)


def _jsonable(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(format(value, f".{SIG_DIGITS}g"))
    return value


def emit(rows: list[dict], fmt: str, out=None) -> None:
    """Write ``rows`` (dicts sharing one key order) as text, csv or json."""
    out = sys.stdout if out is None else out
    if not rows:
        return
    keys = list(rows[0])
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_fmt(row[k]) for k in keys])
    elif fmt == "json":
        json.dump([{k: _jsonable(row[k]) for k in keys} for row in rows], out, indent=1)
        out.write("\n")
    elif len(rows) == 1:
        width = max(len(k) for k in keys)
        for k in keys:
            text = _fmt(rows[0][k])
            out.write(f"{k:<{width}}  {text if text else 'undefined'}\n")
    else:
        cells = [[_fmt(r[k]) or "-" for k in keys] for r in rows]
        widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
        out.write("  ".join(k.rjust(w) for k, w in zip(keys, widths)) + "\n")
        for c in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(c, widths)) + "\n")


def parse_csv(text: str) -> list[dict]:
    """Inverse of :func:`emit` for csv: numeric cells become floats, empty cells None."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row = {}
        for k, v in raw.items():
            if v == "":
                row[k] = None
                continue
            try:
                row[k] = float(v)
            except ValueError:
                row[k] = {"true": True, "false": False}.get(v, v)
        rows.append(row)
    return rows


def _snr_out(x: float, linear: bool) -> float:
    if linear or not (x > 0.0):
        return x
    return linear_to_db(x)


def _snr_in(x: float, linear: bool) -> float:
    return x if linear else db_to_linear(x)


def _bounds_row(u: float) -> dict:
    z = -math.exp(-u - 1.0)
    return {
        "u": u,
        "z": z,
        "lower_c1": bd.F(u, bd.C_LOWER),
        "lower_c3_4": bd.F(u, bd.C_LOWER_UNIT) if u < 1.0 else None,
        "w_m1": wm1_exp(u),
        "upper_c2_3": bd.F(u, bd.C_UPPER),
        "barry": bd.barry_approx(z) if z < 0.0 else None,
    }


def _region_row(theta: float, gamma_bar: float, linear: bool) -> dict:
    avoid = avoid_threshold(theta, gamma_bar) if theta < gamma_bar else math.nan
    return {
        "gamma_bar": _snr_out(gamma_bar, linear),
        "theta": _snr_out(theta, linear),
        "exact_threshold": _snr_out(exact_threshold(theta, gamma_bar), linear),
        "safe_threshold": _snr_out(safe_threshold(theta, gamma_bar), linear),
        "avoid_threshold": _snr_out(avoid, linear) if not math.isnan(avoid) else None,
    }


def cmd_lambert(args) -> list[dict]:
    branch = Branch.parse(args.branch)
    ev = lambert_w(args.z, branch)
    return [{
        "z": ev.z,
        "branch": "0" if branch is Branch.PRINCIPAL else "m1",
        "w": ev.value,
        "residual": ev.residual,
        "iterations": ev.iterations,
    }]


def cmd_bounds(args) -> list[dict]:
    if not args.u > 0.0:
        raise DomainError(f"bounds require u > 0, got {args.u!r}")
    return [_bounds_row(args.u)]


def cmd_decide(args) -> list[dict]:
    lin = args.linear
    theta = _snr_in(args.theta, lin)
    theta_prime = _snr_in(args.theta_prime, lin)
    gamma_bar = _snr_in(args.gamma, lin)
    a = assess(LinkBudget(theta, theta_prime, gamma_bar))
    return [{
        "theta": _snr_out(theta, lin),
        "theta_prime": _snr_out(theta_prime, lin),
        "gamma_bar": _snr_out(gamma_bar, lin),
        "verdict": a.verdict.value,
        "exact_threshold": _snr_out(a.exact_threshold, lin),
        "safe_threshold": _snr_out(a.safe_threshold, lin),
        "avoid_threshold": None if math.isnan(a.avoid_threshold) else _snr_out(a.avoid_threshold, lin),
        "p_nc": a.p_nc,
        "p_c": a.p_c,
        "min_gamma": _snr_out(min_gamma(theta, theta_prime), lin),
        "bounds_certified": a.bounds_certified,
    }]


def sweep_grid(start: float, stop: float, points: int, scale: str) -> np.ndarray:
    """Grid of ``points`` values in the variable's own units.

    ``db``: start/stop are dB, spaced evenly in dB, returned linear.
    ``log``: start/stop are positive linear values, spaced evenly in log.
    ``linear``: evenly spaced.
    """
    if not start < stop:
        raise UsageError(f"sweep needs start < stop, got {start} >= {stop}")
    if points < 2:
        raise UsageError(f"sweep needs at least 2 points, got {points}")
    if scale == "db":
        return 10.0 ** (np.linspace(start, stop, points) / 10.0)
    if scale == "log":
        if start > 0.0:
            return np.geomspace(start, stop, points)
        if stop < 0.0:
            return -np.geomspace(-start, -stop, points)
        raise UsageError("log scale needs start and stop of the same sign")
    return np.linspace(start, stop, points)


def cmd_sweep(args) -> list[dict]:
    var, scale = args.variable, args.scale
    if scale is None:
        scale = "db" if var in ("gamma_bar", "theta") else "linear"
    if scale == "db" and var not in ("gamma_bar", "theta"):
        raise UsageError("db scale only applies to SNR variables (gamma_bar, theta)")
    grid = sweep_grid(args.start, args.stop, args.points, scale)

    if var == "z":
        rows = []
        for z in grid:
            z = float(z)
            rows.append({
                "z": z,
                "w0": lambert_w(z, Branch.PRINCIPAL).value,
                "w_m1": lambert_w(z, Branch.MINUS_ONE).value if z < 0.0 else None,
            })
        return rows
    if var == "u":
        return [_bounds_row(float(u)) for u in grid]

    lin = args.linear
    if var == "gamma_bar":
        if args.theta is None:
            raise UsageError("gamma_bar sweep needs --theta")
        theta = _snr_in(args.theta, lin)
        return [_region_row(theta, float(g), lin) for g in grid]
    if args.gamma is None:
        raise UsageError("theta sweep needs --gamma")
    gamma_bar = _snr_in(args.gamma, lin)
    return [_region_row(float(t), gamma_bar, lin) for t in grid]


def cmd_simulate(args) -> list[dict]:
    lin = args.linear
    spec = SimSpec(
        n_trials=args.n,
        seed=args.seed,
        gamma_bar=_snr_in(args.gamma, lin),
        threshold=_snr_in(args.threshold, lin),
        mode=Mode.parse(args.mode),
    )
    res = simulate(spec, workers=args.workers)
    analytic = analytic_outage(spec)
    se = res.std_error
    return [{
        "mode": "coop" if spec.mode is Mode.COOPERATIVE else "noncoop",
        "threshold": _snr_out(spec.threshold, lin),
        "gamma_bar": _snr_out(spec.gamma_bar, lin),
        "n_trials": spec.n_trials,
        "seed": spec.seed,
        "outage_count": res.outage_count,
        "estimate": res.estimate,
        "std_error": se if se > 0.0 else None,
        "analytic": analytic,
        "z_score": res.z_score(analytic),
    }]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "csv", "json"), default="text")
    snr = argparse.ArgumentParser(add_help=False)
    snr.add_argument("--linear", action="store_true", help="SNR values in and out are linear, not dB")

    p = _Parser(prog="lambertcoop", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lambert", parents=[fmt], help="evaluate W at one point")
    s.add_argument("--z", type=float, required=True)
    s.add_argument("--branch", default="0", help="0 (principal) or m1 (lower branch)")
    s.set_defaults(func=cmd_lambert)

    s = sub.add_parser("bounds", parents=[fmt], help="F(u, c) bounds on W_-1(-exp(-u-1))")
    s.add_argument("--u", type=float, required=True)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("decide", parents=[fmt, snr], help="cooperation verdict for a link budget")
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--theta-prime", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("sweep", parents=[fmt, snr], help="emit plot data over a grid")
    s.add_argument("--variable", choices=("gamma_bar", "theta", "u", "z"), required=True)
    s.add_argument("--start", type=float, required=True)
    s.add_argument("--stop", type=float, required=True)
    s.add_argument("--points", type=int, default=101)
    s.add_argument("--scale", choices=("linear", "log", "db"), default=None)
    s.add_argument("--theta", type=float, help="fixed theta for gamma_bar sweeps")
    s.add_argument("--gamma", type=float, help="fixed gamma_bar for theta sweeps")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("simulate", parents=[fmt, snr], help="Monte Carlo outage estimate")
    s.add_argument("--mode", choices=("noncoop", "coop"), required=True)
    s.add_argument("--threshold", type=float, required=True)
    s.add_argument("--gamma", type=float, required=True)
    s.add_argument("--n", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rows = args.func(args)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    emit(rows, args.format, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
