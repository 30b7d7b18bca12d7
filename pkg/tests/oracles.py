"""Independent re-implementations used as test oracles.

Nothing here imports the package's numerical code; constants and formulas
are written out again from first principles and integrated with scipy.
"""
import math

import numpy as np
from scipy import integrate

C = 299792458.0


def watts(dbm):
    return 10 ** (dbm / 10) / 1000


def snr_numerator(cfg, rho_scale=1.0):
    lam = C / cfg.fc
    beta = lam**2 / (16 * math.pi**2)
    pt = cfg.tau * cfg.eta * watts(cfg.Ps_dBm) / (1 - cfg.tau)
    return beta * beta * pt / watts(cfg.sigma2_dBm) * cfg.N1 * cfg.N2 * rho_scale


def threshold(cfg):
    return 2.0 ** (cfg.R / (1 - cfg.tau)) - 1


def pas_snr(cfg, x, y):
    # both PAs above the user; product of squared 3-D distances
    d1 = (y - cfg.L / 2) ** 2 + cfg.h**2
    d2 = (y + cfg.L / 2) ** 2 + cfg.h**2
    return snr_numerator(cfg) * np.exp(-2 * cfg.alpha * x) / (d1 * d2)


def outage_exact(cfg):
    """1 - (2/(Dx Dy)) int_0^{Dy/2} (length of the covered x interval) dy."""
    S, eps = snr_numerator(cfg), threshold(cfg)

    def covered(y):
        d1 = (y - cfg.L / 2) ** 2 + cfg.h**2
        d2 = (y + cfg.L / 2) ** 2 + cfg.h**2
        ratio = S / (eps * d1 * d2)
        if cfg.alpha == 0:
            return cfg.Dx if ratio > 1 else 0.0
        if ratio <= 1:
            return 0.0
        return min(cfg.Dx, math.log(ratio) / (2 * cfg.alpha))

    val, _ = integrate.quad(covered, 0, cfg.Dy / 2, limit=500, epsabs=1e-13, epsrel=1e-12)
    return 1 - 2 * val / (cfg.Dx * cfg.Dy)


def rate_exact(cfg):
    """Mean of (1-tau) log2(1+SNR) over the rectangle, nested adaptive quadrature."""
    f = lambda y, x: math.log1p(float(pas_snr(cfg, x, y)))
    val, _ = integrate.dblquad(f, 0, cfg.Dx, 0, cfg.Dy / 2, epsabs=1e-13, epsrel=1e-11)
    return (1 - cfg.tau) / math.log(2) * 2 * val / (cfg.Dx * cfg.Dy)


def rate_lossless_exact(cfg):
    S = snr_numerator(cfg)
    f = lambda y: math.log1p(S / (((y - cfg.L / 2) ** 2 + cfg.h**2) * ((y + cfg.L / 2) ** 2 + cfg.h**2)))
    val, _ = integrate.quad(f, 0, cfg.Dy / 2, limit=500, epsabs=1e-14, epsrel=1e-13)
    return 2 * (1 - cfg.tau) / (cfg.Dy * math.log(2)) * val
