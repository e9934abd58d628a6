"""Command-line interface.

Subcommands cover Monte Carlo simulation (`simulate`, `mmimo`,
`realization`), closed-form curves (`bounds`, `rates`), semi-analytic
CDFs (`laplace-cdf`) and cross-file checks (`compare`). User-facing
SINR/gain axes are in dB; everything internal is linear, converted only
here. Exit codes: 0 success, 2 invalid flags, 3 numerical failure,
1 violated compare threshold.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import bounds as bd
from . import laplace as lp
from .channel import FadingModel
from .csvio import read_csv_columns, write_csv, write_sidecar
from .geometry import NetworkConfig, TruncationPolicy, emit_realization
from .mc import EmpiricalCdf, RateParams, ks_distance, mean_shannon_rate, outage_rate, run_mc
from .mmimo import MmimoConfig, run_mmimo
from .numerics import QuadratureError
from .rng import realization_stream

__all__ = ["main"]


def _db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _linear_to_db(x) -> np.ndarray:
    return 10.0 * np.log10(x)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _mu_type(text: str) -> float:
    value = float(text)
    if value <= 2.0:
        raise argparse.ArgumentTypeError("path-loss exponent must exceed 2")
    return value


def _density_type(text: str) -> float:
    value = float(text)
    if value <= 0.0:
        raise argparse.ArgumentTypeError("density must be positive")
    return value


def _grid_db(text: str) -> np.ndarray:
    """Parse lo:hi:steps into a dB grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be lo:hi:steps")
    lo, hi = float(parts[0]), float(parts[1])
    steps = int(parts[2])
    if steps < 1 or hi < lo:
        raise argparse.ArgumentTypeError("grid must satisfy hi >= lo, steps >= 1")
    return np.linspace(lo, hi, steps)


def _network_config(args) -> NetworkConfig:
    delta_db = getattr(args, "delta_db", None)
    delta = _db_to_linear(delta_db) if delta_db is not None else 0.0
    truncation = TruncationPolicy(k_min=args.k_min, tail_rel_tol=args.tail_rel_tol)
    return NetworkConfig(lam=args.lam, mu=args.mu, delta=delta,
                         truncation=truncation, seed=args.seed)


def _add_network_flags(p: argparse.ArgumentParser, with_delta: bool = True) -> None:
    p.add_argument("--mu", type=_mu_type, default=3.7, help="path-loss exponent (> 2)")
    p.add_argument("--lambda", dest="lam", type=_density_type, default=1.0,
                   help="base-station density (per unit area)")
    if with_delta:
        p.add_argument("--delta-db", type=float, default=None,
                       help="normalized noise power in dB; omit for 0")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k-min", type=int, default=500, help="minimum interferer count")
    p.add_argument("--tail-rel-tol", type=float, default=1e-2,
                   help="truncation tail tolerance")


def _summary(sample_set) -> dict:
    mean = sample_set.mean()
    inv = sample_set.mean_inverse()
    return {
        "n": sample_set.n,
        "mean": mean.value, "mean_se": mean.se,
        "mean_inverse": inv.value, "mean_inverse_se": inv.se,
    }


def _cmd_simulate(args, argv) -> int:
    cfg = _network_config(args)
    t0 = time.perf_counter()
    sample_set = run_mc(cfg, FadingModel(args.model), args.n, workers=args.threads)
    samples = np.sort(sample_set.samples)
    ranks = np.arange(1, samples.size + 1) / samples.size
    write_csv(args.out, ["q", "empirical"], zip(samples, ranks))
    write_sidecar(args.out, " ".join(argv),
                  {"model": args.model, "mu": args.mu, "lambda": cfg.lam,
                   "delta": cfg.delta, "seed": cfg.seed, "n": args.n,
                   "k_min": cfg.truncation.k_min,
                   "tail_rel_tol": cfg.truncation.tail_rel_tol,
                   "compensate": cfg.truncation.compensate},
                  _summary(sample_set), time.perf_counter() - t0)
    return 0


def _cmd_bounds(args, argv) -> int:
    t0 = time.perf_counter()
    q = _db_to_linear(_grid_db(args.grid_db))
    if args.model == "nfd":
        header = ["q", "lb", "ub"]
        cols = [[bd.cdf_lb_nfd(x, args.mu) for x in q],
                [bd.cdf_ub_nfd(x, args.mu) for x in q]]
    elif args.model == "fd":
        header = ["q", "lb", "ub", "exact"]
        cols = [[bd.fading_cdf_lb(x, args.mu) for x in q],
                [bd.fading_cdf_ub(x, args.mu) for x in q],
                [bd.fading_cdf_exact(x, args.mu) for x in q]]
    else:  # pfd has a lower bound only
        header = ["q", "lb"]
        cols = [[bd.pfd_cdf_lb(x, args.mu) for x in q]]
    first = _linear_to_db(q) if args.db else q
    if args.db:
        header[0] = "q_db"
    write_csv(args.out, header, zip(first, *cols))
    write_sidecar(args.out, " ".join(argv),
                  {"model": args.model, "mu": args.mu, "grid_db": args.grid_db,
                   "db_axis": args.db},
                  {"points": int(q.size)}, time.perf_counter() - t0)
    return 0


def _cmd_rates(args, argv) -> int:
    cfg = _network_config(args)
    t0 = time.perf_counter()
    model = FadingModel(args.model)
    sample_set = run_mc(cfg, model, args.n, workers=args.threads)
    nfd = model is FadingModel.NON_FADING
    if args.outage:
        alpha = _db_to_linear(args.alpha_db[0])
        etas = _db_to_linear(args.eta_grid_db)
        rows, header = [], ["eta_db", "outage_rate", "se", "or_lb"] + (["or_ub"] if nfd else [])
        for eta_db, eta in zip(args.eta_grid_db, etas):
            est = outage_rate(sample_set, RateParams(alpha=alpha, eta=eta))
            if nfd:
                lo, hi = bd.outage_bounds_nfd(RateParams(alpha=alpha, eta=eta), args.mu)
                rows.append([eta_db, est.value, est.se, lo, hi])
            else:
                lo = bd.outage_lb_fd(RateParams(alpha=alpha, eta=eta), args.mu)
                rows.append([eta_db, est.value, est.se, lo])
        write_csv(args.out, header, rows)
    else:
        alphas = _db_to_linear(args.alpha_db)
        rows, header = [], ["alpha_db", "rate", "se", "rate_lb"] + (["rate_ub"] if nfd else [])
        for a_db, a in zip(np.atleast_1d(args.alpha_db), np.atleast_1d(alphas)):
            est = mean_shannon_rate(sample_set, a)
            if nfd:
                rows.append([a_db, est.value, est.se,
                             bd.avg_rate_lb_nfd(a, args.mu), bd.avg_rate_ub_nfd(a, args.mu)])
            else:
                rows.append([a_db, est.value, est.se, bd.avg_rate_lb_fd(a, args.mu)])
        write_csv(args.out, header, rows)
    write_sidecar(args.out, " ".join(argv),
                  {"model": args.model, "mu": args.mu, "lambda": cfg.lam,
                   "delta": cfg.delta, "seed": cfg.seed, "n": args.n,
                   "outage": bool(args.outage)},
                  _summary(sample_set), time.perf_counter() - t0)
    return 0


def _cmd_laplace_cdf(args, argv) -> int:
    cfg = _network_config(args)
    t0 = time.perf_counter()
    q = _db_to_linear(_grid_db(args.grid_db))
    curve = lp.cdf_via_laplace(args.model, cfg, q)
    write_csv(args.out, ["q", "cdf_laplace"], zip(curve.grid, curve.values))
    write_sidecar(args.out, " ".join(argv),
                  {"model": args.model, "mu": args.mu, "lambda": cfg.lam,
                   "delta": cfg.delta, "grid_db": args.grid_db},
                  {"points": int(q.size)}, time.perf_counter() - t0)
    return 0


def _cmd_mmimo(args, argv) -> int:
    t0 = time.perf_counter()
    base = _network_config(args)
    noise = _db_to_linear(args.noise_db) if args.noise_db is not None else 0.0
    kinds = ["finite", "asymptotic"] if args.kind == "both" else [args.kind]
    m_list = [int(m) for m in args.m_list.split(",")]
    stem = args.out[:-4] if args.out.endswith(".csv") else args.out
    for m in m_list:
        cfg = MmimoConfig(base=base, antennas=m, noise_over_power=noise)
        for kind in kinds:
            samples = np.sort(run_mmimo(cfg, kind, args.n, workers=args.threads))
            ranks = np.arange(1, samples.size + 1) / samples.size
            path = f"{stem}_{kind}_m{m}.csv"
            write_csv(path, ["sinr_db", "empirical_cdf"], zip(_linear_to_db(samples), ranks))
            write_sidecar(path, " ".join(argv),
                          {"mu": args.mu, "lambda": base.lam, "antennas": m,
                           "noise_over_power": noise, "kind": kind,
                           "seed": base.seed, "n": args.n},
                          {"median_db": float(_linear_to_db(np.median(samples)))},
                          time.perf_counter() - t0)
    return 0


def _cmd_realization(args, argv) -> int:
    cfg = NetworkConfig(lam=args.lam, mu=args.mu, seed=args.seed)
    t0 = time.perf_counter()
    pts = emit_realization(cfg, args.window, realization_stream(cfg.seed, 0))
    write_csv(args.out, ["x", "y"], pts)
    write_sidecar(args.out, " ".join(argv),
                  {"lambda": args.lam, "window": args.window, "seed": args.seed},
                  {"count": int(pts.shape[0]), "expected": args.lam * args.window**2},
                  time.perf_counter() - t0)
    return 0


def _empirical_from_csv(path) -> EmpiricalCdf:
    cols = read_csv_columns(path)
    key = "q" if "q" in cols else next(iter(cols))
    return EmpiricalCdf(cols[key])


def _cmd_compare(args, argv) -> int:
    report, failed = {}, False
    ecdf_a = _empirical_from_csv(args.a)
    if args.b is not None:
        ks = ks_distance(ecdf_a, _empirical_from_csv(args.b))
        report["ks_distance"] = ks
        if args.ks_max is not None:
            report["ks_max"] = args.ks_max
            failed |= ks > args.ks_max
    if args.bounds is not None:
        cols = read_csv_columns(args.bounds)
        q = _db_to_linear(cols["q_db"]) if "q_db" in cols else cols["q"]
        emp = ecdf_a.query(q)
        tol = args.bound_tol
        violations = 0
        if "lb" in cols:
            violations += int(np.sum(emp < cols["lb"] - tol))
        if "ub" in cols:
            violations += int(np.sum(emp > cols["ub"] + tol))
        report["bound_violations"] = violations
        report["bound_tol"] = tol
        failed |= violations > 0
    if args.laplace is not None:
        cols = read_csv_columns(args.laplace)
        sup = float(np.abs(ecdf_a.query(cols["q"]) - cols["cdf_laplace"]).max())
        report["laplace_sup_distance"] = sup
        if args.sup_max is not None:
            report["sup_max"] = args.sup_max
            failed |= sup > args.sup_max
    report["passed"] = not failed
    print(json.dumps(report, indent=2, sort_keys=True))
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="adhocsinr", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="Monte Carlo SINR empirical CDF")
    p.add_argument("--model", choices=["nfd", "fd", "pfd"], required=True)
    _add_network_flags(p)
    p.add_argument("--n", type=_positive_int, default=20000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bounds", help="closed-form CDF bound curves")
    p.add_argument("--model", choices=["nfd", "fd", "pfd"], required=True)
    p.add_argument("--mu", type=_mu_type, default=3.7)
    p.add_argument("--grid-db", type=str, default="-20:30:51")
    p.add_argument("--db", action="store_true", help="emit the q axis in dB")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("rates", help="average Shannon rate or outage rate with bounds")
    p.add_argument("--model", choices=["nfd", "fd"], default="nfd")
    _add_network_flags(p)
    p.add_argument("--alpha-db", type=_grid_db, required=True,
                   help="gain grid lo:hi:steps, or a single value x:x:1 with --outage")
    p.add_argument("--outage", action="store_true")
    p.add_argument("--eta-grid-db", type=_grid_db, default=None)
    p.add_argument("--n", type=_positive_int, default=20000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_rates)

    p = sub.add_parser("laplace-cdf", help="SINR CDF via transform inversion")
    p.add_argument("--model", choices=["nfd", "pfd"], required=True)
    _add_network_flags(p)
    p.add_argument("--grid-db", type=str, default="-20:30:40")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_laplace_cdf)

    p = sub.add_parser("mmimo", help="multi-antenna SINR empirical CDFs")
    p.add_argument("--m-list", type=str, default="2,8,32,128")
    p.add_argument("--kind", choices=["finite", "asymptotic", "both"], default="both")
    _add_network_flags(p, with_delta=False)
    p.add_argument("--noise-db", type=float, default=None,
                   help="sigma_n^2/P_T in dB; omit for 0")
    p.add_argument("--n", type=_positive_int, default=5000)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", required=True, help="output stem; files get _<kind>_m<M>.csv")
    p.set_defaults(func=_cmd_mmimo)

    p = sub.add_parser("realization", help="one PPP realization as x,y CSV")
    p.add_argument("--lambda", dest="lam", type=_density_type, default=0.05)
    p.add_argument("--mu", type=_mu_type, default=3.7)
    p.add_argument("--window", type=float, default=20.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_realization)

    p = sub.add_parser("compare", help="KS distances and bound-violation checks")
    p.add_argument("--a", required=True, help="empirical CDF CSV (q,empirical)")
    p.add_argument("--b", default=None, help="second empirical CDF CSV")
    p.add_argument("--ks-max", type=float, default=None)
    p.add_argument("--bounds", default=None, help="bounds CSV (q,lb[,ub])")
    p.add_argument("--bound-tol", type=float, default=0.0)
    p.add_argument("--laplace", default=None, help="laplace CDF CSV (q,cdf_laplace)")
    p.add_argument("--sup-max", type=float, default=None)
    p.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "rates" and args.outage and args.eta_grid_db is None:
        parser.error("--outage requires --eta-grid-db")
    try:
        return args.func(args, ["adhocsinr"] + argv)
    except (QuadratureError, RuntimeError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
