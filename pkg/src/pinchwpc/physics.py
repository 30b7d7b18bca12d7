"""Geometry, channel, harvested energy and SNR of the two-waveguide link.

The PS waveguide runs along y = +L/2 and the AP waveguide along y = -L/2,
both at height h and fed at x = 0.  The user stands at (x_m, y_m, 0).
All functions accept numpy arrays for the coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import SPEED_OF_LIGHT, SystemConfig
from .errors import InvalidConfig


@dataclass(frozen=True)
class DerivedParams:
    wavelength: float
    guided_wavelength: float
    beta: float
    Et: float
    Pt: float
    rho_t: float
    epsilon: float
    array_gain: int = 1

    @property
    def snr_scale(self):
        """Numerator beta^2 * rho_t * N1 * N2 shared by every SNR expression."""
        return self.beta**2 * (self.rho_t * self.array_gain)

    @property
    def chi(self):
        return self.snr_scale / self.epsilon


def outage_threshold(R, tau):
    """SNR threshold 2^(R/(1-tau)) - 1; inf once it overflows a double."""
    try:
        return math.expm1(R / (1.0 - tau) * math.log(2.0))
    except OverflowError:
        return math.inf


def derived_params(cfg: SystemConfig) -> DerivedParams:
    if not 0 < cfg.tau < 1:
        raise InvalidConfig("tau", "must lie in (0, 1)")
    wavelength = SPEED_OF_LIGHT / cfg.fc
    Ps = cfg.Ps
    Pt = cfg.tau / (1.0 - cfg.tau) * cfg.eta * Ps
    return DerivedParams(
        wavelength=wavelength,
        guided_wavelength=wavelength / cfg.n_eff,
        beta=(wavelength / (4.0 * math.pi)) ** 2,
        Et=cfg.tau * cfg.T * Ps,
        Pt=Pt,
        rho_t=Pt / cfg.sigma2,
        epsilon=outage_threshold(cfg.R, cfg.tau),
        array_gain=cfg.N1 * cfg.N2,
    )


def _positions(cfg, x_m, y_m, x1_pin, x2_pin):
    half = 0.5 * cfg.L
    user = np.stack(np.broadcast_arrays(np.asarray(x_m, float), np.asarray(y_m, float), 0.0), axis=-1)
    pa1 = np.stack(np.broadcast_arrays(np.asarray(x1_pin, float), half, cfg.h), axis=-1)
    pa2 = np.stack(np.broadcast_arrays(np.asarray(x2_pin, float), -half, cfg.h), axis=-1)
    feed_p = np.array([0.0, half, cfg.h])
    feed_a = np.array([0.0, -half, cfg.h])
    return user, pa1, pa2, feed_p, feed_a


def channel_coefficients(cfg, x_m, y_m, x1_pin, x2_pin, derived=None):
    """Complex free-space (h1, h2) and in-waveguide phase (g1, g2) terms.

    Only |h_i g_i| enters the performance metrics; this path exists to
    check that the phase factors have unit modulus.
    """
    d = derived or derived_params(cfg)
    user, pa1, pa2, feed_p, feed_a = _positions(cfg, x_m, y_m, x1_pin, x2_pin)
    k0 = 2.0 * math.pi / d.wavelength
    kg = 2.0 * math.pi / d.guided_wavelength
    r1 = np.linalg.norm(user - pa1, axis=-1)
    r2 = np.linalg.norm(user - pa2, axis=-1)
    h1 = math.sqrt(d.beta) * np.exp(-1j * k0 * r1) / r1
    h2 = math.sqrt(d.beta) * np.exp(-1j * k0 * r2) / r2
    g1 = np.exp(-1j * kg * np.linalg.norm(pa1 - feed_p, axis=-1))
    g2 = np.exp(-1j * kg * np.linalg.norm(pa2 - feed_a, axis=-1))
    return h1, h2, g1, g2


def snr_general(cfg, x_m, y_m, x1_pin, x2_pin, derived=None):
    """Received SNR at the AP for arbitrary pinching positions."""
    d = derived or derived_params(cfg)
    user, pa1, pa2, feed_p, feed_a = _positions(cfg, x_m, y_m, x1_pin, x2_pin)
    guided = np.linalg.norm(pa1 - feed_p, axis=-1) + np.linalg.norm(feed_a - pa2, axis=-1)
    r1sq = np.sum((user - pa1) ** 2, axis=-1)
    r2sq = np.sum((pa2 - user) ** 2, axis=-1)
    return d.snr_scale * np.exp(-cfg.alpha * guided) / (r1sq * r2sq)


def aligned_denominator(y_m, h, L):
    """(y^2 + h^2 - L^2/4)^2 + h^2 L^2, the product of squared PA-user distances."""
    y_m = np.asarray(y_m, float)
    return (y_m * y_m + h * h - 0.25 * L * L) ** 2 + h * h * L * L


def snr_aligned(cfg, x_m, y_m, derived=None):
    """SNR with both pinching antennas placed at the user's abscissa."""
    d = derived or derived_params(cfg)
    return d.snr_scale * np.exp(-2.0 * cfg.alpha * np.asarray(x_m, float)) / aligned_denominator(y_m, cfg.h, cfg.L)


def harvested_energy(cfg, x_m, y_m, x1_pin, derived=None):
    """Energy (J) collected by the user during the energy-transfer phase."""
    d = derived or derived_params(cfg)
    user, pa1, _, feed_p, _ = _positions(cfg, x_m, y_m, x1_pin, x1_pin)
    r1sq = np.sum((user - pa1) ** 2, axis=-1)
    guided = np.linalg.norm(pa1 - feed_p, axis=-1)
    return cfg.eta * d.Et * np.exp(-cfg.alpha * guided) * d.beta / r1sq


def uplink_power(cfg, x_m, y_m, x1_pin, derived=None):
    return harvested_energy(cfg, x_m, y_m, x1_pin, derived) / ((1.0 - cfg.tau) * cfg.T)


def achievable_rate(cfg, snr):
    return (1.0 - cfg.tau) * np.log2(1.0 + np.asarray(snr, float))
