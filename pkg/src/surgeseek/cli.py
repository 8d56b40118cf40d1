"""Command-line interface for simulation, averaging, comparison, and sweeps."""
import argparse
import json
import math
import os
import sys
from dataclasses import asdict

import numpy as np

from . import averaging, passivity, scenario as sc
from .dither import validate_dither
from .integrator import IntegratorSettings, integrate
from .vehicle import dynamics_rhs


def _output_dir(s):
    out = os.environ.get(sc.OUTPUT_DIR_ENV, s.output_dir)
    os.makedirs(out, exist_ok=True)
    return out


def _write_meta(out, name, s, extra=None):
    meta = {
        "gains": {"k": s.gains.k, "c": s.gains.c, "epsilon": s.gains.epsilon},
        "cost": s.cost.name,
        "horizon": s.horizon,
        "samples_per_period": s.samples_per_period,
        "warnings": s.warnings,
        "declared_constants": sc.DECLARED_CONSTANTS,
    }
    if extra:
        meta.update(extra)
    with open(os.path.join(out, name), "w") as f:
        json.dump(meta, f, indent=2, sort_keys=True)


def cmd_simulate(args):
    s = sc.load_scenario(args.scenario)
    out = _output_dir(s)
    traj = sc.run_full(s)
    sc.write_trajectory_csv(traj, os.path.join(out, "full.csv"))
    _write_meta(out, "full_meta.json", s)
    for w in s.warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(os.path.join(out, "full.csv"))
    return 0


def cmd_average(args):
    s = sc.load_scenario(args.scenario)
    out = _output_dir(s)
    traj = sc.run_averaged(s)
    sc.write_trajectory_csv(traj, os.path.join(out, "averaged.csv"))
    _write_meta(out, "averaged_meta.json", s)
    print(os.path.join(out, "averaged.csv"))
    return 0


def cmd_compare(args):
    s = sc.load_scenario(args.scenario)
    out = _output_dir(s)
    full = sc.run_full(s)
    avg = sc.run_averaged(s)
    sc.write_trajectory_csv(full, os.path.join(out, "full.csv"))
    sc.write_trajectory_csv(avg, os.path.join(out, "averaged.csv"))
    metrics = sc.compare(full, avg, s, radius=args.radius)
    _write_meta(out, "compare_meta.json", s, extra={"metrics": asdict(metrics)})
    for key, val in asdict(metrics).items():
        print(f"{key}={val:.6g}")
    return 0


def cmd_sweep(args):
    s = sc.load_scenario(args.scenario)
    out = _output_dir(s)
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise ValueError("no sweep values given")
    rows = sc.sweep(s, args.axis, values)
    path = os.path.join(out, f"sweep_{args.axis}.csv")
    sc.write_metrics_csv(rows, path)
    print(path)
    return 0 if all(r["status"] == "ok" for r in rows) else 1


_SIGNALS = {
    "cos": math.cos,
    "sin": math.sin,
    "const": lambda _t: 1.0,
}


def cmd_validate_dither(args):
    w = _SIGNALS[args.signal]
    check = validate_dither(w, args.period, tol=args.tol)
    status = "pass" if check.passed else "fail"
    print(f"{status} mean_residual={check.mean_residual:.3e} "
          f"iterated_residual={check.iterated_residual:.3e} tol={check.tol:g}")
    return 0 if check.passed else 1


def cmd_passivity(args):
    s = sc.load_scenario(args.scenario)
    c = args.c if args.c is not None else s.gains.c
    bound = passivity.c_hat_bound(s.vehicle)
    mono = passivity.monotonicity_check(s.vehicle, c)
    # short trajectory under seeded random inputs to audit the storage inequality
    rng = np.random.default_rng(0)
    us = rng.uniform(-2.0, 2.0, size=(100, 2)) + np.array([0.0, c])

    def rhs(t, y):
        u = us[min(int(t / 0.01), len(us) - 1)]
        return dynamics_rhs(s.vehicle, y, u)

    traj = integrate(rhs, s.initial, IntegratorSettings(step=0.01, tf=1.0))
    traj.inputs = np.vstack([us, us[-1:]])
    residual = passivity.passivity_residual(traj, s.vehicle, c)
    print(f"c_hat={bound:.6g} c={c:g} monotone={mono} "
          f"storage_residual={residual:.3e}")
    return 0


def cmd_demo_di(args):
    def h(z):
        return (z - 1.0) ** 2 + 1.0

    report = averaging.double_integrator_demo(
        h, alpha=args.alpha, omega_freq=args.omega, horizon=args.horizon,
        minimizer=1.0, h_prime=lambda z: 2.0 * (z - 1.0))
    out = os.environ.get(sc.OUTPUT_DIR_ENV, ".")
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, "demo_di.csv")
    with open(path, "w", newline="") as f:
        f.write("t,xi1,xi2\n")
        for t, (z1, z2) in zip(report.full.t, report.full.states):
            f.write(f"{t:.15g},{z1:.15g},{z2:.15g}\n")
    print(f"sup_gap={report.sup_gap:.6g} "
          f"final_error_full={report.final_error_full:.6g} "
          f"final_error_averaged={report.final_error_averaged:.6g}")
    print(path)
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="surgeseek",
        description="Surge-force extremum-seeking simulation toolkit "
                    "for planar underactuated vehicles")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn in (("simulate", cmd_simulate), ("average", cmd_average),
                     ("compare", cmd_compare)):
        sp = sub.add_parser(name)
        sp.add_argument("scenario", help="scenario configuration file")
        if name == "compare":
            sp.add_argument("--radius", type=float, default=None,
                            help="convergence radius for the timing metric")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("sweep")
    sp.add_argument("scenario")
    sp.add_argument("--axis", required=True, choices=sc.SWEEP_AXES)
    sp.add_argument("--values", required=True, help="comma-separated values")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("validate-dither")
    sp.add_argument("--signal", required=True, choices=sorted(_SIGNALS))
    sp.add_argument("--period", type=float, required=True)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.set_defaults(func=cmd_validate_dither)

    sp = sub.add_parser("passivity")
    sp.add_argument("--scenario", required=True)
    sp.add_argument("--c", type=float, default=None)
    sp.set_defaults(func=cmd_passivity)

    sp = sub.add_parser("demo-di")
    sp.add_argument("--omega", type=float, default=20.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--horizon", type=float, default=50.0)
    sp.set_defaults(func=cmd_demo_di)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {type(exc).__name__}: {exc}".replace("\n", " "),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
