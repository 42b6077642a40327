"""Command-line front end.

Subcommands: amplitudes | master | langevin | golden | validate.
Outputs are deterministic: fixed column order, 17-significant-digit floats,
Unix line endings, singular time points written as nan plus a sidecar
``singular_points.txt``.

Exit codes: 0 success, 1 validation failure, 2 config error, 3 numerical
failure (eigensolver non-convergence).
"""

import argparse
import json
import os
import sys

import numpy as np

from . import amplitudes, golden, langevin, master, model, validation
from .config import ConfigError, load_config
from .linalg import JacobiConvergenceError, eigendecompose

MAX_COV_POINTS = 101  # per axis in noise_cov.csv


def fmt(x):
    return format(float(x), ".17g")


def _write_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def _write_singular_report(out_dir, singular_times):
    path = os.path.join(out_dir, "singular_points.txt")
    with open(path, "w", newline="\n") as fh:
        if singular_times:
            fh.write("# time points where P(t) or the Wronskian is singular "
                     "to tolerance; values written as nan\n")
            for t in singular_times:
                fh.write(fmt(t) + "\n")
        else:
            fh.write("# no singular time points\n")


def _prepare(args):
    cfg = load_config(args.config)
    if args.t_max is not None:
        cfg.t_max = args.t_max
    if args.dt is not None:
        cfg.dt = args.dt
    if not cfg.dt > 0 or cfg.t_max < cfg.dt:
        raise ConfigError(f"bad time grid: t_max = {cfg.t_max}, dt = {cfg.dt}")
    if args.window is not None:
        try:
            t1, t2 = (float(x) for x in args.window.split(","))
        except ValueError as exc:
            raise ConfigError(f"bad --window '{args.window}': expected t1,t2") from exc
        if not t1 < t2:
            raise ConfigError(f"bad --window: need t1 < t2, got {t1},{t2}")
        cfg.fit_window = (t1, t2)
    os.makedirs(args.out, exist_ok=True)
    sd = eigendecompose(model.build_hamiltonian(cfg.spec))
    return cfg, sd


def cmd_amplitudes(args):
    cfg, sd = _prepare(args)
    times = cfg.time_grid()
    dim = cfg.spec.dim

    rows = []
    for t in times:
        a = amplitudes.amplitudes_at(sd, t).a
        for n in range(dim):
            for m in range(dim):
                rows.append((fmt(t), str(n), str(m),
                             fmt(a[n, m].real), fmt(a[n, m].imag)))
    _write_csv(os.path.join(args.out, "amplitudes.csv"),
               ["t", "n", "m", "re", "im"], rows)

    a00, _, _ = amplitudes.survival_series(sd, times)
    rows = [(fmt(t), fmt(z.real), fmt(z.imag), fmt(abs(z)))
            for t, z in zip(times, a00)]
    _write_csv(os.path.join(args.out, "survival.csv"),
               ["t", "re", "im", "abs"], rows)
    return 0


def cmd_master(args):
    cfg, sd = _prepare(args)
    times = cfg.time_grid()
    dim = cfg.spec.dim
    cap = cfg.tolerances["condition_cap"]

    tps = []
    mcs = []
    for t in times:
        tp = master.transition_probabilities(amplitudes.amplitudes_at(sd, t))
        tps.append(tp)
        mcs.append(master.master_coefficients_flagged(tp, condition_cap=cap))

    traj = master.evolve_populations(tps, cfg.initial)
    rows = [(fmt(t), str(n), fmt(traj.occupations[i, n]))
            for i, t in enumerate(times) for n in range(dim)]
    _write_csv(os.path.join(args.out, "populations.csv"),
               ["t", "n", "population"], rows)

    rows = []
    for mc in mcs:
        for n in range(dim):
            for k in range(dim):
                rows.append((fmt(mc.t), str(n), str(k), fmt(mc.w[n, k])))
    _write_csv(os.path.join(args.out, "w_coeffs.csv"),
               ["t", "n", "k", "W"], rows)

    res_matrix, res_balance = master.master_residual(tps, mcs, cfg.initial)
    rows = [(fmt(t), fmt(res_matrix[i]), fmt(res_balance[i]))
            for i, t in enumerate(times)]
    _write_csv(os.path.join(args.out, "master_residual.csv"),
               ["t", "residual", "residual_balance"], rows)

    _write_singular_report(args.out, [mc.t for mc in mcs if mc.singular])
    return 0


def cmd_langevin(args):
    cfg, sd = _prepare(args)
    times = cfg.time_grid()

    coeffs = langevin.langevin_series(sd, times)
    rows = [(fmt(lc.t), fmt(lc.a), fmt(lc.b), fmt(lc.omega_sq),
             fmt(lc.gamma), str(int(lc.singular))) for lc in coeffs]
    _write_csv(os.path.join(args.out, "langevin.csv"),
               ["t", "a", "b", "omega_sq", "gamma", "singular"], rows)

    stride = max(1, (len(times) - 1) // (MAX_COV_POINTS - 1)) if len(times) > 1 else 1
    tsub = times[::stride]
    cov = langevin.noise_covariance_grid(sd, tsub, cfg.initial, cfg.spec)
    rows = [(fmt(t), fmt(tp), fmt(cov[i, j]))
            for i, t in enumerate(tsub) for j, tp in enumerate(tsub)]
    _write_csv(os.path.join(args.out, "noise_cov.csv"),
               ["t", "t_prime", "c_ff"], rows)

    res = langevin.langevin_residual(sd, times)
    rows = [(fmt(t), fmt(res[i])) for i, t in enumerate(times)]
    _write_csv(os.path.join(args.out, "langevin_residual.csv"),
               ["t", "residual"], rows)

    _write_singular_report(args.out, [lc.t for lc in coeffs if lc.singular])
    return 0


def default_fit_window(cfg):
    """Window between the initial transient and half the recurrence time."""
    freqs = cfg.spec.bath_frequencies
    if freqs.size >= 2:
        bandwidth = freqs.max() - freqs.min()
        spacing = np.diff(np.sort(freqs))
        spacing = spacing[spacing > 0]
        t1 = 5.0 / bandwidth if bandwidth > 0 else cfg.dt
        t2 = cfg.t_max
        if spacing.size:
            t2 = min(t2, 0.5 * 2.0 * np.pi / spacing.min())
    else:
        t1, t2 = 0.1 * cfg.t_max, cfg.t_max
    if not t1 < t2:
        t1, t2 = 0.0, cfg.t_max
    return (t1, t2)


def cmd_golden(args):
    cfg, sd = _prepare(args)
    times = cfg.time_grid()
    window = cfg.fit_window or default_fit_window(cfg)

    pred = golden.perturbative_prediction(cfg.spec)
    a00, _, _ = amplitudes.survival_series(sd, times)
    fit = golden.fit_exponential(times, a00, window)

    mask = (times >= window[0]) & (times <= window[1])
    wtimes = times[mask]
    stride = max(1, (len(wtimes) - 1) // 200) if len(wtimes) > 1 else 1
    wtimes = wtimes[::stride]
    cap = cfg.tolerances["condition_cap"]
    w_series = [master.master_coefficients_flagged(
        master.transition_probabilities(amplitudes.amplitudes_at(sd, t)),
        condition_cap=cap) for t in wtimes]
    w_dev = golden.compare_exact_vs_golden(wtimes, w_series, cfg.spec)

    report = {
        "gamma_pred": pred.gamma,
        "gamma_fit": fit.gamma_fit,
        "delta_omega_pred": pred.delta_omega,
        "omega_fit": fit.omega_fit,
        "window": list(fit.window),
        "goodness": fit.goodness,
        "w_deviation": w_dev,
    }
    with open(os.path.join(args.out, "golden_report.json"), "w", newline="\n") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return 0


def cmd_validate(args):
    cfg, _ = _prepare(args)
    results = validation.run_suite(cfg)
    width = max(len(name) for name, _, _, _ in results)
    failed = 0
    for name, value, tolerance, ok in results:
        status = "PASS" if ok else "FAIL"
        print(f"{status}  {name:<{width}}  value={value:.3e}  tol={tolerance:.1e}")
        if not ok:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="oscbath",
        description="Exact master and Langevin equations for a harmonic "
                    "oscillator coupled to a finite bath")
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "amplitudes": cmd_amplitudes,
        "master": cmd_master,
        "langevin": cmd_langevin,
        "golden": cmd_golden,
        "validate": cmd_validate,
    }
    for name, handler in handlers.items():
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--t-max", type=float, default=None, help="override time.t_max")
        p.add_argument("--dt", type=float, default=None, help="override time.dt")
        p.add_argument("--window", default=None, help="fit window t1,t2")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except JacobiConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
