"""Batch command-line front end.

Subcommands: gen-path, averages, diagnose, integrate, green-check,
ito-compare, wiener-mc, solve-ode, reproduce.  Exit codes: 0 success,
2 validation error, 3 numerical failure (with a JSON error payload on
stdout).  Every subcommand is deterministic given its flags and seed.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import experiments
from .calculus import green_eval, ito_compare
from .diagnostics import existence_report, wiener_ensemble
from .dyadic import average_pyramid
from .errors import QuadratureFailure, RoughPathError
from .fields import BUILTIN_FIELDS, resolve_field
from .generators import gen_analytic, gen_brownian, gen_counterexample, gen_oscillatory
from .integrator import ConvergenceConfig, integrate
from .io import (
    read_flat_config,
    read_path_csv,
    validate_schema,
    write_json,
    write_path_csv,
    write_pyramid_csv,
    DIAGNOSE_SCHEMA,
)
from .ode import MatrixField, OdeProblem, SolverConfig, solve
from .quadrature import QuadratureConfig


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return max(1, args.threads)
    env = os.environ.get("ROUGHPATH_THREADS")
    return max(1, int(env)) if env else 1


def _apply_config(args, parser):
    """Overlay a flat key=value config file under explicit flags."""
    if not getattr(args, "config", None):
        return
    actions = list(parser._actions)
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            actions.extend(action.choices[args.command]._actions)
    known = {a.dest for a in actions}
    for key, value in read_flat_config(args.config).items():
        dest = key.replace("-", "_")
        if dest not in known:
            parser.error(f"unknown config key {key!r}")
        if getattr(args, dest, None) is None:
            setattr(args, dest, value)


def _gen_path(args):
    kind = args.kind
    if kind == "brownian":
        path = gen_brownian(args.K, args.seed)
    elif kind == "oscillatory":
        path = gen_oscillatory(args.alpha, args.beta, args.A, args.m_max, args.K)
    elif kind == "counterexample":
        path = gen_counterexample(args.alpha, args.beta, args.K)
    else:
        path = gen_analytic(kind, args.K)
    write_path_csv(path, args.out)
    print(f"wrote {args.out} ({path.samples.size} rows, K={path.resolution_level})")
    return 0


def _averages(args):
    path = read_path_csv(args.path)
    write_pyramid_csv(average_pyramid(path), args.out)
    print(f"wrote {args.out}")
    return 0


def _diagnose(args):
    path = read_path_csv(args.path)
    report = existence_report(path.pyramid(), args.beta).to_json()
    validate_schema(report, DIAGNOSE_SCHEMA)
    if args.json_out:
        write_json(report, args.json_out)
    print(json.dumps(report if args.json else {"verdict": report["verdict"]}, indent=2))
    return 0


def _integrate(args):
    path = read_path_csv(args.path)
    field = resolve_field(args.field)
    cfg = ConvergenceConfig(
        tol=args.tol, min_level=args.min_level, quad=QuadratureConfig(tol=args.quad_tol)
    )
    result = integrate(field, path, args.a, args.b, cfg)
    payload = {
        "value": result.value,
        "converged": bool(result.converged),
        "levels": list(result.levels),
        "level_values": [float(v) for v in result.level_values],
    }
    if args.json_out:
        write_json(payload, args.json_out)
    print(json.dumps(payload, indent=2))
    if not result.converged:
        print("integration did not converge within the resolved levels", file=sys.stderr)
        return 3
    return 0


def _green_check(args):
    path = read_path_csv(args.path)
    field = BUILTIN_FIELDS.get(args.field)
    if field is None or (field.depends_on != "x_only" and field.dt_partial is None):
        raise RoughPathError(
            f"green-check needs a builtin field with a known time partial; "
            f"choices: {sorted(BUILTIN_FIELDS)}"
        )
    direct = integrate(field, path, 0.0, args.s, ConvergenceConfig(tol=args.tol))
    green = green_eval(field, path, args.s)
    payload = {
        "value_direct": direct.value,
        "value_green": green.total,
        "difference": direct.value - green.total,
    }
    if args.json_out:
        write_json(payload, args.json_out)
    print(json.dumps(payload, indent=2))
    return 0


def _ito_compare(args):
    paths = [gen_brownian(args.K, args.seed + i) for i in range(args.n_paths)]
    field = BUILTIN_FIELDS[args.field]
    if field.depends_on != "x_only":
        raise RoughPathError("ito-compare needs a state-only builtin field")
    f = lambda x: field.evaluate(np.zeros_like(np.asarray(x, dtype=float)), x)
    report = ito_compare(f, paths, s=args.s)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("seed,residual\n")
            for i, r in enumerate(report["residuals"]):
                fh.write(f"{args.seed + i},{r:.17g}\n")
    print(
        json.dumps(
            {k: report[k] for k in ("s", "n_paths", "mean_abs_residual", "max_abs_residual")},
            indent=2,
        )
    )
    return 0


def _wiener_mc(args):
    k_list = [int(k) for k in args.k.split(",")]
    report = wiener_ensemble(k_list, args.n_paths, args.K, args.seed, threads=_threads(args))
    if args.json_out:
        write_json(report, args.json_out)
    print(json.dumps(report, indent=2))
    return 0


def _solve_ode(args):
    drivers = [read_path_csv(p) for p in args.drivers.split(",")]
    if args.F == "linear":
        F = MatrixField.linear_in_y()
    elif args.F == "constant":
        F = MatrixField.constant(1.0)
    else:
        raise RoughPathError("supported --F values: linear, constant")
    y0 = np.array([float(v) for v in args.y0.split(",")])
    problem = OdeProblem(F=F, drivers=drivers, y0=y0, beta=args.beta)
    cfg = SolverConfig(tol=args.tol, grid_level=args.grid_level)
    solution = solve(problem, cfg)
    with open(args.out, "w") as fh:
        fh.write("t," + ",".join(f"y{i + 1}" for i in range(solution.y.shape[0])) + "\n")
        for row in np.column_stack([solution.t, solution.y.T]):
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    sidecar = {
        "residual": solution.residual,
        "windows": solution.windows,
        "converged": bool(solution.converged),
    }
    if args.json_out:
        write_json(sidecar, args.json_out)
    print(json.dumps(sidecar, indent=2))
    return 0


def _reproduce(args):
    names = experiments.CRITERIA_ORDER if args.name == "all" else [args.name]
    failures = 0
    for name in names:
        result = experiments.run_criterion(name)
        print(experiments.format_result(result))
        failures += 0 if result.passed else 1
    return 0 if failures == 0 else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="roughpath", description=__doc__)
    parser.add_argument("--config", help="flat key = value defaults file")
    parser.add_argument("--threads", type=int, help="worker cap (ROUGHPATH_THREADS fallback)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-path", help="generate a path CSV")
    p.add_argument("--kind", required=True,
                   help="brownian | oscillatory | counterexample | linear | square | sine")
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.45)
    p.add_argument("--beta", type=float, default=0.45)
    p.add_argument("--A", type=float, default=0.0)
    p.add_argument("--m-max", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_gen_path)

    p = sub.add_parser("averages", help="dump the average pyramid of a path CSV")
    p.add_argument("--path", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_averages)

    p = sub.add_parser("diagnose", help="existence diagnostic report")
    p.add_argument("--path", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--json", action="store_true", help="print the full report")
    p.add_argument("--json-out")
    p.set_defaults(fn=_diagnose)

    p = sub.add_parser("integrate", help="staircase integral of a field over a path")
    p.add_argument("--path", required=True)
    p.add_argument("--field", required=True, help="builtin name or expression in t, x")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--min-level", type=int, default=2)
    p.add_argument("--quad-tol", type=float, default=1e-10)
    p.add_argument("--json-out")
    p.set_defaults(fn=_integrate)

    p = sub.add_parser("green-check", help="direct value vs Green-route value")
    p.add_argument("--path", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--json-out")
    p.set_defaults(fn=_green_check)

    p = sub.add_parser("ito-compare", help="correction-identity residuals on an ensemble")
    p.add_argument("--field", default="x2")
    p.add_argument("--K", type=int, default=14)
    p.add_argument("--n-paths", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--out", help="CSV of per-seed residuals")
    p.set_defaults(fn=_ito_compare)

    p = sub.add_parser("wiener-mc", help="Wiener statistic ensemble summary")
    p.add_argument("--k", required=True, help="comma-separated levels")
    p.add_argument("--n-paths", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out")
    p.set_defaults(fn=_wiener_mc)

    p = sub.add_parser("solve-ode", help="Picard solve of dy = F(t, y, x) dx")
    p.add_argument("--drivers", required=True, help="comma-separated path CSVs")
    p.add_argument("--F", default="linear")
    p.add_argument("--y0", default="1.0")
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--grid-level", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--json-out")
    p.set_defaults(fn=_solve_ode)

    p = sub.add_parser("reproduce", help="run a named acceptance experiment")
    p.add_argument("name", help="'all' or one of: " + ", ".join(experiments.CRITERIA_ORDER))
    p.set_defaults(fn=_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, parser)
        for dest, value in vars(args).items():
            if dest.endswith("tol") and value is not None and value <= 0:
                parser.error(f"{dest} must be positive")
        return args.fn(args)
    except QuadratureFailure as exc:
        print(json.dumps({"error": "numerical", "detail": str(exc)}))
        return 3
    except RoughPathError as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}))
        return 2
    except (ValueError, OSError) as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
