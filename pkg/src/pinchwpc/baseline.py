"""Conventional WPC benchmark: fixed antennas at the waveguide feed points.

The PS radiates from (0, L/2, h) and the AP listens at (0, -L/2, h), one
antenna each, with no in-waveguide loss and no fading.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mc
from .config import SystemConfig
from .physics import derived_params


@dataclass(frozen=True)
class BaselineConfig:
    system: SystemConfig

    @property
    def feed_ps(self):
        return (0.0, 0.5 * self.system.L, self.system.h)

    @property
    def feed_ap(self):
        return (0.0, -0.5 * self.system.L, self.system.h)


def baseline_snr(cfg: SystemConfig, x_m, y_m, derived=None):
    d = derived or derived_params(cfg)
    x = np.asarray(x_m, float)
    y = np.asarray(y_m, float)
    half, h2 = 0.5 * cfg.L, cfg.h * cfg.h
    dp = x * x + (y - half) ** 2 + h2
    da = x * x + (y + half) ** 2 + h2
    return d.beta**2 * d.rho_t / (dp * da)


def baseline_estimates(cfg: SystemConfig, spec: mc.McSpec = mc.McSpec()):
    return mc.mc_estimates(cfg, spec, model="baseline")


def baseline_outage(cfg: SystemConfig, spec: mc.McSpec = mc.McSpec()) -> mc.Estimate:
    return baseline_estimates(cfg, spec)[0]


def baseline_rate(cfg: SystemConfig, spec: mc.McSpec = mc.McSpec()) -> mc.Estimate:
    return baseline_estimates(cfg, spec)[1]


def baseline_quad_outage(cfg: SystemConfig, grid=mc.DEFAULT_GRID) -> float:
    return mc.quad_outage(cfg, grid, model="baseline")


def baseline_quad_rate(cfg: SystemConfig, grid=mc.DEFAULT_GRID) -> float:
    return mc.quad_rate(cfg, grid, model="baseline")
