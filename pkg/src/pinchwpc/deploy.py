"""Waveguide separation and user placement: closed-form optima and 1-D searches."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import analytic, mc
from .config import SystemConfig
from .physics import snr_aligned

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TAU_BOUNDS = (1e-4, 1.0 - 1e-4)
SCAN_POINTS = 10_000
PRESCAN_POINTS = 65


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    GRID_SEARCH = "grid_search"
    GOLDEN_SECTION = "golden_section"


class Metric(str, enum.Enum):
    OUTAGE = "outage"
    RATE = "rate"


@dataclass(frozen=True)
class PlacementResult:
    argopt: object
    objective: float
    method: Method
    non_unimodal: bool = False
    flat: bool = False
    exceeds_remark5: bool | None = None
    bounds: tuple = ()


def optimal_L_for_user(cfg: SystemConfig, y_m) -> PlacementResult:
    """Separation maximizing the aligned SNR of a user at ordinate y_m."""
    y = abs(float(y_m))
    L = 2.0 * math.sqrt(y * y - cfg.h * cfg.h) if y >= cfg.h else 0.0
    f = (y * y + cfg.h**2 - 0.25 * L * L) ** 2 + cfg.h**2 * L * L
    return PlacementResult(L, f, Method.CLOSED_FORM)


def optimal_user_position(cfg: SystemConfig) -> PlacementResult:
    """Best user position ((x, +y), (x, -y)) for the configured separation."""
    h, L, Dy = cfg.h, cfg.L, cfg.Dy
    if L < 2.0 * h:
        y = 0.0
    elif L <= math.sqrt(Dy * Dy + 4.0 * h * h):
        y = math.sqrt(max(0.25 * L * L - h * h, 0.0))
    else:
        y = 0.5 * Dy
    snr = float(snr_aligned(cfg, 0.0, y))
    return PlacementResult(((0.0, y), (0.0, -y)), snr, Method.CLOSED_FORM)


def snr_profile_y(cfg: SystemConfig, x_m, y_grid):
    """Rows of (y_m, SNR) along a line of constant x_m."""
    y = np.asarray(y_grid, dtype=float)
    if np.any(np.abs(y) > 0.5 * cfg.Dy):
        raise ValueError("y grid leaves the user region")
    return np.column_stack([y, snr_aligned(cfg, x_m, y)])


def golden_section(f, lo, hi, tol):
    """Minimize f on [lo, hi] assuming unimodality; returns (x, f(x))."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    best = [(fc, c), (fd, d), (f(a), a), (f(b), b)]
    fx, x = min(best)
    return x, fx


def _search(f, lo, hi, tol, scan_points=SCAN_POINTS):
    # f is minimized; callers negate maximization objectives
    pre = np.linspace(lo, hi, PRESCAN_POINTS)
    pv = np.array([f(x) for x in pre])
    if np.all(pv == pv[0]):
        return PlacementResult(lo, pv[0], Method.GRID_SEARCH, flat=True, bounds=(lo, hi))
    i = int(np.argmin(pv))
    a, b = pre[max(i - 1, 0)], pre[min(i + 1, pre.size - 1)]
    x, fx = golden_section(f, a, b, tol)

    grid = np.linspace(lo, hi, scan_points)
    gv = np.array([f(g) for g in grid])
    j = int(np.argmin(gv))
    if gv[j] < fx - 10.0 * tol:
        return PlacementResult(grid[j], gv[j], Method.GRID_SEARCH, non_unimodal=True, bounds=(lo, hi))
    return PlacementResult(x, fx, Method.GOLDEN_SECTION, bounds=(lo, hi))


def metric_value(cfg: SystemConfig, metric, K=None, grid=mc.DEFAULT_GRID):
    """Outage probability or ergodic rate, closed form where available."""
    if Metric(metric) is Metric.OUTAGE:
        return analytic.outage_probability(cfg, K, grid).p_out
    return analytic.ergodic_rate(cfg, K).value


def _objective(cfg, metric, field, K, grid):
    sign = -1.0 if Metric(metric) is Metric.RATE else 1.0

    def f(v):
        return sign * metric_value(cfg.replace(**{field: float(v)}), metric, K, grid)

    return f, sign


def _finish(res, sign, **extra):
    return PlacementResult(
        float(res.argopt),
        sign * float(res.objective),
        res.method,
        res.non_unimodal,
        res.flat,
        extra.get("exceeds_remark5"),
        res.bounds,
    )


def search_optimal_tau(cfg: SystemConfig, metric=Metric.RATE, tol=1e-6, K=None,
                       grid=mc.DEFAULT_GRID, scan_points=SCAN_POINTS) -> PlacementResult:
    """Time-allocation factor minimizing outage or maximizing the rate."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    f, sign = _objective(cfg, metric, "tau", K, grid)
    res = _search(f, TAU_BOUNDS[0], TAU_BOUNDS[1], tol, scan_points)
    return _finish(res, sign)


def search_optimal_L(cfg: SystemConfig, metric=Metric.OUTAGE, tol=1e-6, K=None,
                     grid=mc.DEFAULT_GRID, scan_points=SCAN_POINTS) -> PlacementResult:
    """PS-AP separation over [0, Dy]; flags optima beyond sqrt(Dy^2 - 4h^2)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    f, sign = _objective(cfg, metric, "L", K, grid)
    res = _search(f, 0.0, cfg.Dy, tol, scan_points)
    useful = math.sqrt(max(cfg.Dy**2 - 4.0 * cfg.h**2, 0.0))
    return _finish(res, sign, exceeds_remark5=float(res.argopt) > useful)
