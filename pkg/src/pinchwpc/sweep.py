"""Parameter sweeps, figure recipes and their CSV / run-record output."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic, baseline, mc
from .config import SystemConfig, dump_config
from .errors import InvalidConfig
from .physics import snr_aligned

__version__ = "0.1.0"

AXES = ("Ps_dBm", "alpha", "L", "tau", "Dx", "Dy", "y_m")
CF_METRICS = ("outage_cf", "rate_cf")
MC_METRICS = ("outage_mc", "rate_mc", "baseline_outage", "baseline_rate")
SNR_METRICS = ("snr", "baseline_snr")
METRICS = CF_METRICS + MC_METRICS + SNR_METRICS


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    lo: float
    hi: float
    points: int
    metrics: tuple = ("outage_cf", "rate_cf")
    x_m: float = 0.0  # abscissa for the y_m axis

    def __post_init__(self):
        if self.axis not in AXES:
            raise InvalidConfig("axis", f"unknown sweep axis {self.axis!r}; choose from {', '.join(AXES)}")
        if not self.lo < self.hi:
            raise InvalidConfig("range", "need lo < hi")
        if self.points < 2:
            raise InvalidConfig("points", "need at least 2 points")
        bad = [m for m in self.metrics if m not in METRICS]
        if bad or not self.metrics:
            raise InvalidConfig("metrics", f"unknown metrics {bad}; choose from {', '.join(METRICS)}")
        position = self.axis == "y_m"
        if any((m in SNR_METRICS) != position for m in self.metrics):
            raise InvalidConfig("metrics", "snr metrics go with the y_m axis and only there")

    def values(self):
        return np.linspace(self.lo, self.hi, self.points)

    def columns(self):
        cols = [self.axis]
        for m in self.metrics:
            cols.append(m)
            if m in CF_METRICS:
                cols.append(m + "_regime")
            elif m in MC_METRICS:
                cols.append(m + "_std_err")
        return cols


@dataclass(frozen=True)
class EvalOptions:
    mc_spec: mc.McSpec = mc.McSpec()
    K: int | None = None
    grid: tuple = mc.DEFAULT_GRID
    fallback: bool = True


def _outage_cf(cfg, opts):
    if opts.fallback:
        res = analytic.outage_probability(cfg, opts.K, opts.grid)
    elif cfg.alpha == 0:
        res = analytic.outage_lossless(cfg)
    else:
        res = analytic.outage_lossy(cfg, opts.K)
    return res.p_out, str(res.regime)


def evaluate_point(cfg: SystemConfig, spec: SweepSpec, value, opts=EvalOptions()):
    """One CSV row (list aligned with ``spec.columns()``)."""
    if spec.axis == "y_m":
        point = cfg
    else:
        change = {spec.axis: float(value)}
        point = cfg.replace(**change)
    row = [float(value)]
    pas = base = None
    for m in spec.metrics:
        if m == "outage_cf":
            row += list(_outage_cf(point, opts))
        elif m == "rate_cf":
            r = analytic.ergodic_rate(point, opts.K)
            row += [r.value, r.form.value]
        elif m in ("outage_mc", "rate_mc"):
            pas = pas or mc.mc_estimates(point, opts.mc_spec)
            est = pas[0] if m == "outage_mc" else pas[1]
            row += [est.value, est.std_err]
        elif m in ("baseline_outage", "baseline_rate"):
            base = base or baseline.baseline_estimates(point, opts.mc_spec)
            est = base[0] if m == "baseline_outage" else base[1]
            row += [est.value, est.std_err]
        elif m == "snr":
            row.append(float(snr_aligned(point, spec.x_m, value)))
        else:
            row.append(float(baseline.baseline_snr(point, spec.x_m, value)))
    return row


def run_sweep(cfg: SystemConfig, spec: SweepSpec, opts=EvalOptions(), workers=1):
    """All rows in axis order; points run concurrently when workers > 1."""
    vals = spec.values()
    if spec.axis == "y_m" and np.any(np.abs(vals) > 0.5 * cfg.Dy):
        raise InvalidConfig("range", "y_m range leaves the user region")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda v: evaluate_point(cfg, spec, v, opts), vals))
    return [evaluate_point(cfg, spec, v, opts) for v in vals]


def _fmt(v):
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def render_csv(cfg, spec, rows, opts=EvalOptions(), extra=()):
    """CSV text with a ``#`` preamble; identical inputs give identical bytes."""
    buf = io.StringIO()
    buf.write(f"# pinchwpc {__version__}\n")
    buf.write(f"# seed = {opts.mc_spec.seed}\n")
    buf.write(f"# samples = {opts.mc_spec.samples}\n")
    buf.write(f"# K = {opts.K or cfg.K}\n")
    buf.write(f"# grid = {opts.grid[0]}x{opts.grid[1]}\n")
    for line in extra:
        buf.write(f"# {line}\n")
    for line in dump_config(cfg).splitlines():
        buf.write(f"# config: {line}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(spec.columns())
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def read_csv(path):
    """(header, rows) of an emitted CSV; numeric cells become floats."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    rows = []
    for rec in reader:
        out = []
        for cell in rec:
            try:
                out.append(float(cell))
            except ValueError:
                out.append(cell)
        rows.append(out)
    return header, rows


def column(header, rows, name):
    i = header.index(name)
    return np.array([r[i] for r in rows], dtype=float)


@dataclass
class RunRecord:
    config: dict
    version: str
    seed: int
    samples: int
    K: int
    grid: tuple
    sweep: dict
    columns: list
    rows: list
    timestamp: str = field(default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%S%z"))

    def to_json(self):
        return json.dumps(dataclasses.asdict(self), indent=1)


def write_sweep(path, cfg, spec, rows, opts=EvalOptions(), extra=()):
    """Write the CSV and a ``.json`` run record next to it."""
    text = render_csv(cfg, spec, rows, opts, extra)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    rec = RunRecord(
        config=dataclasses.asdict(cfg),
        version=__version__,
        seed=opts.mc_spec.seed,
        samples=opts.mc_spec.samples,
        K=opts.K or cfg.K,
        grid=tuple(opts.grid),
        sweep=dataclasses.asdict(spec),
        columns=spec.columns(),
        rows=rows,
    )
    with open(os.path.splitext(path)[0] + ".json", "w", encoding="utf-8") as fh:
        fh.write(rec.to_json())


# Figure recipes: (file stem, config overrides, sweep) per emitted CSV.
PS_AXIS = dict(axis="Ps_dBm", lo=0.0, hi=70.0, points=29)
ALPHAS = (0.0, 0.01, 0.05, 0.1)


def _tag(a):
    return "lossless" if a == 0 else f"alpha{a:g}"


def figure_recipes():
    out = {}
    out["fig3"] = [
        (f"fig3_D{d}", dict(Dx=d, Dy=d), SweepSpec(**PS_AXIS, metrics=("outage_cf", "outage_mc", "baseline_outage")))
        for d in (10.0, 30.0)
    ]
    for panel, d in (("a", 10.0), ("b", 30.0)):
        out[f"fig4{panel}"] = [
            (f"fig4{panel}_{_tag(a)}", dict(Dx=d, Dy=d, alpha=a),
             SweepSpec(**PS_AXIS, metrics=("outage_cf", "outage_mc", "baseline_outage")))
            for a in ALPHAS
        ]
        out[f"fig8{panel}"] = [
            (f"fig8{panel}_{_tag(a)}", dict(Dx=d, Dy=d, alpha=a),
             SweepSpec(**PS_AXIS, metrics=("rate_cf", "rate_mc", "baseline_rate")))
            for a in ALPHAS
        ]
    out["fig6"] = [
        (f"fig6_Ps{p:g}", dict(Dx=10.0, Dy=10.0, Ps_dBm=p),
         SweepSpec("L", 0.0, 10.0, 101, metrics=("outage_cf", "outage_mc")))
        for p in (35.0, 36.0, 37.0, 38.0)
    ]
    out["fig7"] = [
        (f"fig7_D{d}", dict(Dx=d, Dy=d), SweepSpec(**PS_AXIS, metrics=("rate_cf", "rate_mc", "baseline_rate")))
        for d in (10.0, 30.0)
    ]
    out["fig9"] = [
        (f"fig9_{_tag(a)}", dict(Dx=10.0, Dy=10.0, Ps_dBm=40.0, alpha=a),
         SweepSpec("tau", 0.01, 0.99, 99, metrics=("rate_cf", "rate_mc")))
        for a in ALPHAS
    ]
    return dict(sorted(out.items()))


FIGURE_IDS = tuple(figure_recipes())


def make_figure(fig_id, out_dir, cfg=None, opts=EvalOptions(), workers=1):
    """Run every sweep of a figure recipe; returns the written CSV paths."""
    recipes = figure_recipes()
    if fig_id not in recipes:
        raise InvalidConfig("figure", f"unknown figure id {fig_id!r}; choose from {', '.join(recipes)}")
    cfg = cfg or SystemConfig()
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for stem, overrides, spec in recipes[fig_id]:
        point = cfg.replace(**overrides)
        rows = run_sweep(point, spec, opts, workers)
        path = os.path.join(out_dir, stem + ".csv")
        write_sweep(path, point, spec, rows, opts, extra=[f"figure = {fig_id}"])
        paths.append(path)
    return paths
