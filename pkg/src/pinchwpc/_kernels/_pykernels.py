"""Numpy implementations of the hot loops.

Same signatures and arithmetic order as the compiled module, so results
agree to the last few ulps (exp/log1p may round differently).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..rng import GOLDEN, MIX1, MIX2

CHUNK = 1 << 16

_U11 = np.uint64(11)
_SHIFTS = (np.uint64(30), np.uint64(27), np.uint64(31))
_MIX1 = np.uint64(MIX1)
_MIX2 = np.uint64(MIX2)
_GOLDEN = np.uint64(GOLDEN)
_PI2_6 = math.pi**2 / 6.0


def _mix64(z):
    z = (z ^ (z >> _SHIFTS[0])) * _MIX1
    z = (z ^ (z >> _SHIFTS[1])) * _MIX2
    return z ^ (z >> _SHIFTS[2])


def counter_uniforms(key, counters):
    """Uniforms in [0, 1) for an array of uint64 counters."""
    c = np.asarray(counters, dtype=np.uint64)
    z = _mix64(np.uint64(key) + (c + np.uint64(1)) * _GOLDEN)
    return (z >> _U11).astype(np.float64) * 2.0**-53


def _drop_chunk(out, start, stop, key, antithetic, model, Dx, Dy, h2, half, alpha, scale, rate_coef):
    idx = np.arange(start, stop, dtype=np.uint64)
    if antithetic:
        pair = idx >> np.uint64(1)
        flip = (idx & np.uint64(1)).astype(bool)
    else:
        pair = idx
    u1 = counter_uniforms(key, pair * np.uint64(2))
    u2 = counter_uniforms(key, pair * np.uint64(2) + np.uint64(1))
    if antithetic:
        u1 = np.where(flip, 1.0 - u1, u1)
        u2 = np.where(flip, 1.0 - u2, u2)
    x = Dx * u1
    y = Dy * (u2 - 0.5)
    if model == 0:
        d1 = (half - y) * (half - y) + h2
        d2 = (half + y) * (half + y) + h2
        snr = scale * np.exp(-alpha * (x + x)) / (d1 * d2)
    else:
        xx = x * x
        d1 = xx + (y - half) * (y - half) + h2
        d2 = xx + (y + half) * (y + half) + h2
        snr = scale / (d1 * d2)
    out[start:stop] = rate_coef * np.log1p(snr)


def mc_rates(key, n, antithetic, model, Dx, Dy, h, L, alpha, scale, rate_coef, nthreads=1):
    """Per-drop achievable rate (1 - tau) log2(1 + SNR) for drops 0..n-1.

    model 0 is the aligned pinching-antenna link, model 1 the fixed
    feed-point benchmark.  ``rate_coef`` is (1 - tau) / ln 2.
    """
    out = np.empty(n, dtype=np.float64)
    args = (key, bool(antithetic), int(model), Dx, Dy, h * h, 0.5 * L, alpha, scale, rate_coef)
    spans = [(s, min(s + CHUNK, n)) for s in range(0, n, CHUNK)]
    if nthreads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(nthreads) as pool:
            list(pool.map(lambda sp: _drop_chunk(out, sp[0], sp[1], *args), spans))
    else:
        for s, e in spans:
            _drop_chunk(out, s, e, *args)
    return out


def _grid(n, lo, width):
    step = width / n
    return (np.arange(n) + 0.5) * step + lo


def _aligned_denoms(y, h2, half):
    return ((half - y) * (half - y) + h2) * ((half + y) * (half + y) + h2)


def quad_outage_count(nx, ny, model, Dx, Dy, h, L, alpha, scale, eps):
    """Number of midpoint cells of the user rectangle with SNR < eps."""
    x = _grid(nx, 0.0, Dx)
    y = _grid(ny, -0.5 * Dy, Dy)
    h2, half = h * h, 0.5 * L
    count = 0
    if model == 0:
        num = scale * np.exp(-alpha * (x + x))
        den = _aligned_denoms(y, h2, half)
        rows = max(1, (1 << 22) // ny)
        for s in range(0, nx, rows):
            count += int(np.count_nonzero(num[s:s + rows, None] / den[None, :] < eps))
    else:
        a = (y - half) * (y - half) + h2
        b = (y + half) * (y + half) + h2
        rows = max(1, (1 << 22) // ny)
        for s in range(0, nx, rows):
            xx = (x[s:s + rows] * x[s:s + rows])[:, None]
            count += int(np.count_nonzero(scale / ((xx + a) * (xx + b)) < eps))
    return count


def quad_rate_rows(nx, ny, model, Dx, Dy, h, L, alpha, scale):
    """Row sums of ln(1 + SNR) over the midpoint grid, one per x cell."""
    x = _grid(nx, 0.0, Dx)
    y = _grid(ny, -0.5 * Dy, Dy)
    h2, half = h * h, 0.5 * L
    out = np.empty(nx)
    rows = max(1, (1 << 22) // ny)
    if model == 0:
        num = scale * np.exp(-alpha * (x + x))
        den = _aligned_denoms(y, h2, half)
        for s in range(0, nx, rows):
            out[s:s + rows] = np.log1p(num[s:s + rows, None] / den[None, :]).sum(axis=1)
    else:
        a = (y - half) * (y - half) + h2
        b = (y + half) * (y + half) + h2
        for s in range(0, nx, rows):
            xx = (x[s:s + rows] * x[s:s + rows])[:, None]
            out[s:s + rows] = np.log1p(scale / ((xx + a) * (xx + b))).sum(axis=1)
    return out


def _li2_series(s):
    # sum_{k>=1} s^k / k^2 for |s| <= 1/2
    total = np.zeros_like(s)
    power = s.copy()
    k = 1
    while True:
        term = power / (k * k)
        total += term
        if not np.any(np.abs(term) >= 1e-16):
            break
        k += 1
        power *= s
    return total


def dilog(x):
    """Real dilogarithm Li2 on (-inf, 1], elementwise."""
    x = np.asarray(x, dtype=np.float64)
    if np.any(x > 1.0) or np.any(np.isnan(x)):
        raise ValueError("dilog is real only for x <= 1")
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    t = x.copy()
    sign = np.ones_like(x)
    add = np.zeros_like(x)

    inv = x < -1.0
    if inv.any():
        lx = np.log(-x[inv])
        add[inv] = -_PI2_6 - 0.5 * lx * lx
        sign[inv] = -1.0
        t[inv] = 1.0 / x[inv]

    landen = t < -0.5
    if landen.any():
        tl = t[landen]
        l1 = np.log1p(-tl)
        add[landen] += sign[landen] * (-0.5 * l1 * l1)
        sign[landen] = -sign[landen]
        t[landen] = tl / (tl - 1.0)

    one = t == 1.0
    refl = (t > 0.5) & ~one
    if refl.any():
        tr = t[refl]
        add[refl] += sign[refl] * (_PI2_6 - np.log(tr) * np.log1p(-tr))
        sign[refl] = -sign[refl]
        t[refl] = 1.0 - tr
    if one.any():
        add[one] += sign[one] * _PI2_6
        t[one] = 0.0

    out = add + sign * _li2_series(t)
    return out[0] if scalar else out


def compensated_sum(values, shift=0.0, square=False):
    """Correctly rounded sum of (v - shift) or (v - shift)^2."""
    d = np.asarray(values, dtype=np.float64) - shift
    if square:
        d = d * d
    return math.fsum(d.tolist())
