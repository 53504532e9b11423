"""Command-line entry point.

Exit codes: 0 success, 1 a validation check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import config as cfgmod
from .crosscheck import run_validation
from .levy import InvalidModelError, effective_velocity, validate
from .passage import washout_probability
from .persistence import (
    AlwaysPersists,
    InvalidParamsError,
    asymptotic_critical_length,
    critical_curve,
    persistence_verdict,
    round_trip_residual,
)
from .simulate import (
    TEST_FUNCTIONS,
    clone_model_check,
    estimate_washout,
    kesten_critical_speed,
    replicate_summaries,
    simulate_bbm_kesten,
    simulate_population,
)

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


def format_value(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def render(rows, columns, fmt):
    if fmt == "json":
        def clean(v):
            if isinstance(v, (float, np.floating)):
                return float(v) if math.isfinite(v) else None
            if isinstance(v, np.integer):
                return int(v)
            if isinstance(v, np.bool_):
                return bool(v)
            return v

        data = [{c: clean(row.get(c)) for c in columns} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])
    return buf.getvalue()


def emit(args, rows, columns):
    text = render(rows, columns, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _values(args, keys):
    file_values = cfgmod.read_config_file(args.config) if getattr(args, "config", None) else {}
    flags = {k: getattr(args, k, None) for k in keys}
    return cfgmod.merge(file_values, flags)


MODEL_KEYS = cfgmod.SECTIONS["model"]
REGIME_KEYS = cfgmod.SECTIONS["regime"]
SIM_KEYS = cfgmod.SECTIONS["sim"]


def _model(values):
    model = cfgmod.build_model(values)
    problems = validate(model)
    if problems:
        raise InvalidModelError(problems)
    return model


def _params(values):
    p = cfgmod.build_params(values)
    p.check()
    return p


def cmd_critical_length(args):
    values = _values(args, MODEL_KEYS + REGIME_KEYS)
    model, p = _model(values), _params(values)
    verdict = persistence_verdict(model, p)
    if isinstance(verdict, AlwaysPersists):
        row = {"verdict": str(verdict)}
    else:
        v = effective_velocity(model)
        row = {
            "verdict": "CriticalLength",
            "L_c": verdict.length,
            "L_c_asymptotic": asymptotic_critical_length(v, p),
            "round_trip_residual": round_trip_residual(model, p, verdict.length),
            "degenerate": verdict.degenerate,
        }
    emit(args, [row], ["verdict", "L_c", "L_c_asymptotic", "round_trip_residual", "degenerate"])
    return EXIT_OK


def parse_grid(text):
    try:
        grid = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"grid must be comma-separated numbers, got {text!r}") from None
    if not grid:
        raise UsageError("grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("grid must be strictly increasing")
    return grid


def cmd_curve(args):
    values = _values(args, MODEL_KEYS + REGIME_KEYS)
    values.setdefault("v", 1.0)
    base = cfgmod.build_model(values)
    p = _params(values)
    rows = critical_curve(base, p, parse_grid(args.grid), workers=args.workers)
    data = [dict(row.as_dict(), error=row.error) for row in rows]
    columns = ["v", "L_c", "L_c_asymptotic", "ratio"]
    if any(row.error for row in rows):
        columns.append("error")
    emit(args, data, columns)
    return EXIT_OK if any(row.error is None for row in rows) else EXIT_FAILED


def cmd_validate(args):
    values = _values(args, MODEL_KEYS + REGIME_KEYS + SIM_KEYS)
    cfg = cfgmod.build_sim(values)
    model = _model(values) if values.get("family") or values.get("v") or values.get("drift") else None
    params = _params(values) if any(values.get(k) is not None for k in REGIME_KEYS) else None
    if params is not None and params.departure_rate <= params.growth_rate:
        raise InvalidParamsError("validation needs departureRate > growthRate")
    results = run_validation(cfg, model, params, replicates=args.replicates)
    emit(args, [r.as_dict() for r in results],
         ["check", "expected", "estimate", "std_error", "z", "rule", "passed", "note"])
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def cmd_simulate_population(args):
    values = _values(args, MODEL_KEYS + REGIME_KEYS + SIM_KEYS)
    model, p, cfg = _model(values), _params(values), cfgmod.build_sim(values)
    if args.trajectory:
        traj = simulate_population(model, p, args.L, args.initial, cfg)
        rows = [
            {"time": t, "benthic": b, "mobile": m}
            for t, b, m in zip(traj.times, traj.benthic, traj.mobile)
        ]
        emit(args, rows, ["time", "benthic", "mobile"])
        return EXIT_OK
    summaries = replicate_summaries(model, p, args.L, args.initial, args.replicates, cfg)
    rows = [{"replicate": i, "extinct": ext, "extinctionTime": et} for i, ext, et in summaries]
    emit(args, rows, ["replicate", "extinct", "extinctionTime"])
    return EXIT_OK


def cmd_simulate_washout(args):
    values = _values(args, MODEL_KEYS + REGIME_KEYS + SIM_KEYS)
    model, cfg = _model(values), cfgmod.build_sim(values)
    lambda1 = cfgmod._float(values, "lambda1")
    if not lambda1 > 0:
        raise InvalidParamsError(f"settlingRate > 0 violated (got {lambda1})")
    est = estimate_washout(model, lambda1, args.L, cfg)
    analytic = washout_probability(model, lambda1, args.L)
    row = {
        "estimate": est.mean,
        "se": est.std_error,
        "n": est.n,
        "analytic": analytic,
        "abs_z": abs(est.z_score(analytic)),
    }
    emit(args, [row], ["estimate", "se", "n", "analytic", "abs_z"])
    return EXIT_OK


def cmd_simulate_bbm(args):
    values = _values(args, SIM_KEYS)
    cfg = cfgmod.build_sim(values)
    if args.horizon is None and "horizon" not in values:
        cfg = replace(cfg, horizon=30.0)
    flags = simulate_bbm_kesten(args.D, args.r, args.v, args.x0, args.replicates, cfg)
    frac = float(flags.mean())
    row = {
        "survival_fraction": frac,
        "se": math.sqrt(frac * (1 - frac) / flags.size),
        "replicates": int(flags.size),
        "critical_speed": kesten_critical_speed(args.D, args.r),
    }
    emit(args, [row], list(row))
    return EXIT_OK


def cmd_simulate_clone(args):
    values = _values(args, SIM_KEYS)
    cfg = cfgmod.build_sim(values)
    rep = clone_model_check(args.D, args.v, args.r, args.f, args.x0, args.t, cfg)
    row = {
        "t": rep.t,
        "mc_mean": rep.mc_mean,
        "se": rep.mc_std_error,
        "analytic": rep.analytic,
        "martingale_gap": rep.martingale_gap,
        "gap_se": rep.gap_std_error,
        "passed": rep.passed,
    }
    emit(args, [row], list(row))
    return EXIT_OK


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--config", help="key = value config file with [model]/[regime]/[sim] sections")


def _add_model(p):
    g = p.add_argument_group("model")
    g.add_argument("--model", dest="family", choices=cfgmod.FAMILIES)
    g.add_argument("--v", type=float, help="effective velocity")
    g.add_argument("--drift", type=float, help="linear drift (instead of --v)")
    g.add_argument("--D", dest="diffusion", type=float, help="diffusion coefficient")
    g.add_argument("--jump-rate", dest="jump_rate", type=float)
    g.add_argument("--jump-mean", dest="jump_mean", type=float)
    g.add_argument("--jump-size", dest="jump_size", type=float)
    g.add_argument("--jumps", help="discrete jumps as size:rate,size:rate")


def _add_regime(p):
    g = p.add_argument_group("regime")
    g.add_argument("--r", type=float, help="benthic growth rate")
    g.add_argument("--lambda0", type=float, help="departure rate")
    g.add_argument("--lambda1", type=float, help="settling rate")


def _add_sim(p):
    g = p.add_argument_group("simulation")
    g.add_argument("--seed", type=int)
    g.add_argument("--n", type=int, help="Monte Carlo sample size")
    g.add_argument("--dt", type=float)
    g.add_argument("--horizon", type=float)
    g.add_argument("--cap", type=int, help="population cap")
    g.add_argument("--workers", type=int, help="threads (output does not depend on it)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="driftparadox",
        description="Wash-out probabilities and critical lengths under drift.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("critical-length", help="critical domain length for one model")
    _add_model(p), _add_regime(p), _add_output(p)
    p.set_defaults(func=cmd_critical_length)

    p = sub.add_parser("curve", help="critical length over a velocity grid")
    _add_model(p), _add_regime(p), _add_output(p)
    p.add_argument("--grid", default="0.5,1,2,4,8,16,32,64", help="comma-separated velocities")
    p.add_argument("--workers", type=int, default=1, help="threads (output does not depend on it)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("validate", help="Monte Carlo cross-validation suite")
    _add_model(p), _add_regime(p), _add_sim(p), _add_output(p)
    p.add_argument("--replicates", type=int, default=200)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simulate", help="run one simulation engine")
    engines = p.add_subparsers(dest="engine", required=True)

    e = engines.add_parser("population", help="regime-switching population")
    _add_model(e), _add_regime(e), _add_sim(e), _add_output(e)
    e.add_argument("--L", type=float, required=True)
    e.add_argument("--initial", type=int, default=20)
    e.add_argument("--replicates", type=int, default=100)
    e.add_argument("--trajectory", action="store_true", help="emit the event trajectory of one run")
    e.set_defaults(func=cmd_simulate_population)

    e = engines.add_parser("washout", help="wash-out probability estimate")
    _add_model(e), _add_regime(e), _add_sim(e), _add_output(e)
    e.add_argument("--L", type=float, required=True)
    e.set_defaults(func=cmd_simulate_washout)

    e = engines.add_parser("bbm", help="branching Brownian motion absorbed at 0")
    _add_sim(e), _add_output(e)
    e.add_argument("--v", type=float, required=True, help="drift (negative, towards 0)")
    e.add_argument("--D", type=float, required=True)
    e.add_argument("--r", type=float, required=True)
    e.add_argument("--x0", type=float, default=1.0)
    e.add_argument("--replicates", type=int, default=200)
    e.set_defaults(func=cmd_simulate_bbm)

    e = engines.add_parser("clone-check", help="clone branching martingale check")
    _add_sim(e), _add_output(e)
    e.add_argument("--f", choices=sorted(TEST_FUNCTIONS), default="x")
    e.add_argument("--t", type=float, default=1.0)
    e.add_argument("--x0", type=float, default=0.0)
    e.add_argument("--v", type=float, default=1.0)
    e.add_argument("--D", type=float, default=1.0)
    e.add_argument("--r", type=float, default=0.5)
    e.set_defaults(func=cmd_simulate_clone)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (cfgmod.ConfigError, InvalidModelError, InvalidParamsError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
