"""Validation oracles: seeded Monte Carlo over user drops and midpoint-grid quadrature.

Neither oracle touches the closed-form machinery.  Monte Carlo draws the
user uniformly over the rectangle with the counter-based generator, so a
given (seed, samples) pair gives bit-identical estimates at any thread
count; sums are compensated and run in sample order.  The quadrature oracle evaluates the
outage indicator / rate integrand on an ``nx`` x ``ny`` midpoint grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .config import SystemConfig, UserPosition
from .physics import derived_params, outage_threshold
from .rng import CounterRNG, stream_key

DEFAULT_GRID = (2000, 2000)
Z95 = 1.959963984540054
LN2 = math.log(2.0)

MODELS = {"pas": 0, "baseline": 1}


@dataclass(frozen=True)
class McSpec:
    samples: int = 10**6
    seed: int = 42
    antithetic: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.antithetic and self.samples % 2:
            raise ValueError("antithetic pairing needs an even sample count")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class Estimate:
    value: float
    std_err: float
    ci95_low: float
    ci95_high: float
    samples: int

    @classmethod
    def from_mean(cls, value, std_err, samples, bounds=(-math.inf, math.inf)):
        lo = max(bounds[0], value - Z95 * std_err)
        hi = min(bounds[1], value + Z95 * std_err)
        return cls(value, std_err, min(lo, value), max(hi, value), samples)


def sample_user(cfg: SystemConfig, seed, index) -> UserPosition:
    """Position of drop ``index`` for ``seed`` (scalar reference path)."""
    u1, u2 = CounterRNG(seed).sample_pair(index)
    return UserPosition(cfg.Dx * u1, cfg.Dy * (u2 - 0.5))


def sample_users(cfg: SystemConfig, seed, start, count):
    """Vectorized drops ``start .. start+count-1`` as (x, y) arrays."""
    idx = np.arange(start, start + count, dtype=np.uint64) * np.uint64(2)
    key = stream_key(seed)
    u1 = _kernels.counter_uniforms(key, idx)
    u2 = _kernels.counter_uniforms(key, idx + np.uint64(1))
    return cfg.Dx * u1, cfg.Dy * (u2 - 0.5)


def _snr_scale(cfg, model):
    d = derived_params(cfg)
    # the benchmark has a single fixed antenna per node
    return d.snr_scale if model == "pas" else d.beta**2 * d.rho_t


def drop_rates(cfg: SystemConfig, spec: McSpec, model="pas"):
    """Achievable rate (1 - tau) log2(1 + SNR) of every drop."""
    return _kernels.mc_rates(
        stream_key(spec.seed),
        spec.samples,
        spec.antithetic,
        MODELS[model],
        cfg.Dx,
        cfg.Dy,
        cfg.h,
        cfg.L,
        cfg.alpha,
        _snr_scale(cfg, model),
        (1.0 - cfg.tau) / LN2,
        spec.threads,
    )


def _mean_var(values):
    n = values.size
    m = _kernels.compensated_sum(values) / n
    if n < 2:
        return m, 0.0
    return m, _kernels.compensated_sum(values, m, True) / (n - 1)


def _pair_std_err(values):
    pairs = 0.5 * (values[0::2] + values[1::2])
    _, var = _mean_var(pairs)
    return math.sqrt(var / pairs.size)


def estimates_from_rates(rates, R, antithetic=False):
    """(outage, rate) estimates from per-drop rates."""
    n = rates.size
    hits = rates < R
    k = int(np.count_nonzero(hits))
    p = k / n
    mean, var = _mean_var(rates)
    if antithetic:
        se_p = _pair_std_err(hits.astype(np.float64))
        se_r = _pair_std_err(rates)
    else:
        se_p = math.sqrt(p * (1.0 - p) / n)
        se_r = math.sqrt(var / n)
    return (
        Estimate.from_mean(p, se_p, n, bounds=(0.0, 1.0)),
        Estimate.from_mean(mean, se_r, n, bounds=(0.0, math.inf)),
    )


def mc_estimates(cfg: SystemConfig, spec: McSpec = McSpec(), model="pas"):
    """Outage and ergodic-rate estimates from one set of drops."""
    return estimates_from_rates(drop_rates(cfg, spec, model), cfg.R, spec.antithetic)


def mc_outage(cfg: SystemConfig, spec: McSpec = McSpec()) -> Estimate:
    return mc_estimates(cfg, spec)[0]


def mc_rate(cfg: SystemConfig, spec: McSpec = McSpec()) -> Estimate:
    return mc_estimates(cfg, spec)[1]


def _check_grid(grid):
    nx, ny = grid
    if nx < 100 or ny < 100:
        raise ValueError("oracle grid needs nx, ny >= 100")
    return int(nx), int(ny)


def _aligned_outage_count(nx, ny, cfg, scale, eps):
    # Same predicate as the brute-force kernel; p(y) is sorted once and the
    # monotone test num_i / den < eps is bisected per row.
    x = (np.arange(nx) + 0.5) * (cfg.Dx / nx) + 0.0
    y = (np.arange(ny) + 0.5) * (cfg.Dy / ny) + (-0.5 * cfg.Dy)
    h2, half = cfg.h * cfg.h, 0.5 * cfg.L
    den = np.sort(((half - y) * (half - y) + h2) * ((half + y) * (half + y) + h2))
    num = scale * np.exp(-cfg.alpha * (x + x))
    lo = np.zeros(nx, dtype=np.int64)
    hi = np.full(nx, ny, dtype=np.int64)
    while np.any(lo < hi):
        mid = (lo + hi) // 2
        safe = np.minimum(mid, ny - 1)
        hit = (num / den[safe] < eps) & (lo < hi)
        hi = np.where(hit, mid, hi)
        lo = np.where(~hit & (lo < hi), mid + 1, lo)
    return int(np.sum(ny - lo))


def quad_outage(cfg: SystemConfig, grid=DEFAULT_GRID, model="pas", method="auto") -> float:
    """Fraction of midpoint cells in outage (SNR below 2^(R/(1-tau)) - 1)."""
    nx, ny = _check_grid(grid)
    eps = outage_threshold(cfg.R, cfg.tau)
    scale = _snr_scale(cfg, model)
    if model == "pas" and method == "auto":
        count = _aligned_outage_count(nx, ny, cfg, scale, eps)
    else:
        count = _kernels.quad_outage_count(
            nx, ny, MODELS[model], cfg.Dx, cfg.Dy, cfg.h, cfg.L, cfg.alpha, scale, eps
        )
    return count / (nx * ny)


def quad_rate(cfg: SystemConfig, grid=DEFAULT_GRID, model="pas") -> float:
    """Midpoint-grid mean of (1 - tau) log2(1 + SNR) over the user rectangle."""
    nx, ny = _check_grid(grid)
    rows = _kernels.quad_rate_rows(
        nx, ny, MODELS[model], cfg.Dx, cfg.Dy, cfg.h, cfg.L, cfg.alpha, _snr_scale(cfg, model)
    )
    return (1.0 - cfg.tau) / LN2 * math.fsum(rows) / (nx * ny)
