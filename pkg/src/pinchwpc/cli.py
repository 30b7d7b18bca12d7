"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 bad config or arguments,
3 closed form unavailable with the oracle fallback disabled.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import deploy, mc, sweep, validation
from .config import K_MAX, SystemConfig, dump_config, load_config
from .errors import InvalidConfig, UnsupportedGeometry

EXIT_FAIL, EXIT_CONFIG, EXIT_GEOMETRY = 1, 2, 3


def _grid(text):
    try:
        nx, ny = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 2000x2000, got {text!r}") from None
    if nx < 100 or ny < 100:
        raise argparse.ArgumentTypeError("grid needs at least 100 points per side")
    return nx, ny


def _range(text):
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}") from None
    return lo, hi


def _common(p):
    p.add_argument("--config", metavar="PATH", help="key = value config file (defaults otherwise)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=10**6, help="Monte Carlo drops per point")
    p.add_argument("--k", type=int, default=None, help="Chebyshev node count (config K otherwise)")
    p.add_argument("--grid", type=_grid, default=mc.DEFAULT_GRID, metavar="NXxNY", help="oracle grid")
    p.add_argument("--workers", type=int, default=1, help="concurrent sweep points")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--no-fallback", action="store_true",
                   help="fail (exit 3) instead of using the grid oracle when no closed form applies")


def build_parser():
    ap = argparse.ArgumentParser(prog="pinchwpc", description="Wireless-powered pinching-antenna system model")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep one parameter and write a CSV")
    _common(p)
    p.add_argument("--axis", required=True, choices=sweep.AXES)
    p.add_argument("--range", dest="span", type=_range, required=True, metavar="LO:HI")
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--metrics", default="outage_cf,rate_cf", help="comma list of " + ", ".join(sweep.METRICS))
    p.add_argument("--x-m", type=float, default=0.0, help="user abscissa for the y_m axis")

    p = sub.add_parser("figure", help="emit the CSVs behind one figure")
    _common(p)
    p.add_argument("id", help=", ".join(sweep.FIGURE_IDS))

    p = sub.add_parser("validate", help="run the acceptance checks")
    _common(p)
    p.add_argument("--only", default="", help="comma list of check ids")
    p.add_argument("--random-configs", type=int, default=10**5)
    p.add_argument("--figure-samples", type=int, default=10**4)

    for name, what in (("optimal-l", "PS-AP separation"), ("optimal-tau", "time-allocation factor")):
        p = sub.add_parser(name, help=f"search the optimal {what}")
        _common(p)
        p.add_argument("--metric", choices=[m.value for m in deploy.Metric],
                       default="outage" if name == "optimal-l" else "rate")
        p.add_argument("--tol", type=float, default=1e-6)
        if name == "optimal-l":
            p.add_argument("--y-m", type=float, default=None,
                           help="report the SNR-optimal separation for a user at this y_m instead")

    p = sub.add_parser("position-scan", help="SNR along y_m and the optimal user position")
    _common(p)
    p.add_argument("--x-m", type=float, default=0.0)
    p.add_argument("--points", type=int, default=1001)
    return ap


def _load(args):
    cfg = load_config(args.config) if args.config else SystemConfig()
    if args.k is not None:
        if not 1 <= args.k <= K_MAX:
            raise InvalidConfig("k", f"must lie in [1, {K_MAX}]")
        cfg = cfg.replace(K=args.k)
    return cfg


def _opts(args):
    try:
        spec = mc.McSpec(samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise InvalidConfig("samples/seed", str(exc)) from None
    return sweep.EvalOptions(mc_spec=spec, K=args.k, grid=args.grid, fallback=not args.no_fallback)


def _emit(args, cfg, spec, rows, opts, extra=()):
    if args.out and args.out != "-":
        sweep.write_sweep(args.out, cfg, spec, rows, opts, extra)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(sweep.render_csv(cfg, spec, rows, opts, extra))


def cmd_sweep(args):
    cfg, opts = _load(args), _opts(args)
    metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
    spec = sweep.SweepSpec(args.axis, args.span[0], args.span[1], args.points, metrics, args.x_m)
    rows = sweep.run_sweep(cfg, spec, opts, args.workers)
    _emit(args, cfg, spec, rows, opts)
    return 0


def cmd_figure(args):
    cfg, opts = _load(args), _opts(args)
    for path in sweep.make_figure(args.id, args.out or ".", cfg, opts, args.workers):
        print(f"wrote {path}")
    return 0


def cmd_validate(args):
    cfg = _load(args)
    only = {int(t) for t in args.only.split(",") if t.strip()} if args.only else None
    settings = validation.Settings(
        mc_spec=_opts(args).mc_spec,
        grid=args.grid,
        random_configs=args.random_configs,
        figure_samples=args.figure_samples,
        workers=args.workers,
        seed=args.seed,
    )
    print("# config")
    for line in dump_config(cfg).splitlines():
        print(f"#   {line}")
    results = validation.run_all(cfg, settings, only, report=lambda r: print(r.line(), flush=True))
    failed = [r.id for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_FAIL if failed else 0


def cmd_optimal(args):
    cfg = _load(args)
    if args.command == "optimal-l" and args.y_m is not None:
        res = deploy.optimal_L_for_user(cfg, args.y_m)
        print(f"L* = {res.argopt:.17g} m  (denominator {res.objective:.17g}, {res.method.value})")
        return 0
    search = deploy.search_optimal_L if args.command == "optimal-l" else deploy.search_optimal_tau
    res = search(cfg, args.metric, args.tol, args.k, args.grid)
    name = "L_opt" if args.command == "optimal-l" else "tau_opt"
    print(f"{name} = {res.argopt:.17g}")
    print(f"{args.metric} = {res.objective:.17g}")
    print(f"method = {res.method.value}")
    if res.flat:
        print("warning: objective is flat over the search range; lower bound reported")
    if res.non_unimodal:
        print("warning: grid scan beat the golden-section result; grid optimum reported")
    if res.exceeds_remark5:
        print("note: optimum lies beyond sqrt(Dy^2 - 4h^2)")
    return 0


def cmd_position_scan(args):
    cfg, opts = _load(args), _opts(args)
    best = deploy.optimal_user_position(cfg)
    half = 0.5 * cfg.Dy
    spec = sweep.SweepSpec("y_m", -half, half, args.points, ("snr", "baseline_snr"), args.x_m)
    rows = sweep.run_sweep(cfg, spec, opts)
    y, snr = np.array([r[0] for r in rows]), np.array([r[1] for r in rows])
    (x1, y1), (x2, y2) = best.argopt
    extra = [
        f"optimal position = ({x1:.17g}, {y1:.17g}) and ({x2:.17g}, {y2:.17g})",
        f"grid argmax y_m = {abs(y[int(np.argmax(snr))]):.17g}",
    ]
    _emit(args, cfg, spec, rows, opts, extra)
    return 0


COMMANDS = {
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "validate": cmd_validate,
    "optimal-l": cmd_optimal,
    "optimal-tau": cmd_optimal,
    "position-scan": cmd_position_scan,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UnsupportedGeometry as exc:
        print(f"error: no closed form and fallback disabled: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
