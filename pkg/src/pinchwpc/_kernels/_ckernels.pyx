# cython: language_level=3
"""Compiled hot loops; mirrors _pykernels."""
import numpy as np

from cython.parallel cimport prange, parallel
from libc.math cimport exp, log, log1p, fabs
from libc.stdint cimport uint64_t

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15
cdef uint64_t MIX1 = 0xBF58476D1CE4E5B9
cdef uint64_t MIX2 = 0x94D049BB133111EB
cdef double TWO_M53 = 1.0 / 9007199254740992.0
cdef double PI2_6 = 1.6449340668482264


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline double _uniform(uint64_t key, uint64_t counter) noexcept nogil:
    return <double>(_mix64(key + (counter + 1) * GOLDEN) >> 11) * TWO_M53


def counter_uniforms(key, counters):
    cdef uint64_t[::1] c = np.ascontiguousarray(counters, dtype=np.uint64)
    cdef Py_ssize_t i, n = c.shape[0]
    cdef uint64_t k = key
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    for i in range(n):
        o[i] = _uniform(k, c[i])
    return out


def mc_rates(key, Py_ssize_t n, bint antithetic, int model, double Dx, double Dy,
             double h, double L, double alpha, double scale, double rate_coef, int nthreads=1):
    # the C loop produces SNRs; numpy's vectorized log1p is far faster than libm's
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef uint64_t k = key
    cdef double h2 = h * h
    cdef double half = 0.5 * L
    cdef Py_ssize_t i
    cdef uint64_t pair
    cdef double u1, u2, x, y, d1, d2
    with nogil, parallel(num_threads=nthreads):
        for i in prange(n, schedule="static"):
            if antithetic:
                pair = (<uint64_t>i) >> 1
            else:
                pair = <uint64_t>i
            u1 = _uniform(k, 2 * pair)
            u2 = _uniform(k, 2 * pair + 1)
            if antithetic and (i & 1):
                u1 = 1.0 - u1
                u2 = 1.0 - u2
            x = Dx * u1
            y = Dy * (u2 - 0.5)
            if model == 0:
                d1 = (half - y) * (half - y) + h2
                d2 = (half + y) * (half + y) + h2
                o[i] = scale * exp(-alpha * (x + x)) / (d1 * d2)
            else:
                d1 = x * x + (y - half) * (y - half) + h2
                d2 = x * x + (y + half) * (y + half) + h2
                o[i] = scale / (d1 * d2)
    np.log1p(out, out=out)
    np.multiply(out, rate_coef, out=out)
    return out


def quad_outage_count(Py_ssize_t nx, Py_ssize_t ny, int model, double Dx, double Dy,
                      double h, double L, double alpha, double scale, double eps):
    cdef double sx = Dx / nx
    cdef double sy = Dy / ny
    cdef double h2 = h * h
    cdef double half = 0.5 * L
    cdef Py_ssize_t i, j
    cdef long long count = 0
    cdef double x, y, num, xx
    ys = np.empty(ny)
    cdef double[::1] yv = ys
    den = np.empty(ny)
    cdef double[::1] dv = den
    for j in range(ny):
        y = (j + 0.5) * sy + (-0.5 * Dy)
        yv[j] = y
        dv[j] = ((half - y) * (half - y) + h2) * ((half + y) * (half + y) + h2)
    for i in range(nx):
        x = (i + 0.5) * sx + 0.0
        if model == 0:
            num = scale * exp(-alpha * (x + x))
            for j in range(ny):
                if num / dv[j] < eps:
                    count += 1
        else:
            xx = x * x
            for j in range(ny):
                y = yv[j]
                if scale / ((xx + ((y - half) * (y - half) + h2)) * (xx + ((y + half) * (y + half) + h2))) < eps:
                    count += 1
    return int(count)


def quad_rate_rows(Py_ssize_t nx, Py_ssize_t ny, int model, double Dx, double Dy,
                   double h, double L, double alpha, double scale):
    cdef double sx = Dx / nx
    cdef double sy = Dy / ny
    cdef double h2 = h * h
    cdef double half = 0.5 * L
    cdef Py_ssize_t i, j, r, s, e
    cdef Py_ssize_t rows = max(1, (1 << 22) // ny)
    cdef double x, y, num, xx
    ys = np.empty(ny)
    cdef double[::1] yv = ys
    den = np.empty(ny)
    cdef double[::1] dv = den
    out = np.empty(nx)
    buf = np.empty((min(rows, nx), ny))
    cdef double[:, ::1] b = buf
    for j in range(ny):
        y = (j + 0.5) * sy + (-0.5 * Dy)
        yv[j] = y
        dv[j] = ((half - y) * (half - y) + h2) * ((half + y) * (half + y) + h2)
    for s in range(0, nx, rows):
        e = min(s + rows, nx)
        for r in range(e - s):
            x = (s + r + 0.5) * sx + 0.0
            if model == 0:
                num = scale * exp(-alpha * (x + x))
                for j in range(ny):
                    b[r, j] = num / dv[j]
            else:
                xx = x * x
                for j in range(ny):
                    y = yv[j]
                    b[r, j] = scale / ((xx + ((y - half) * (y - half) + h2)) * (xx + ((y + half) * (y + half) + h2)))
        block = buf[:e - s]
        np.log1p(block, out=block)
        out[s:e] = block.sum(axis=1)
    return out


cdef double _li2_series(double s) noexcept nogil:
    cdef double total = 0.0, power = s, term
    cdef int k = 1
    while True:
        term = power / (k * k)
        total += term
        if fabs(term) < 1e-16:
            break
        k += 1
        power *= s
    return total


cdef double _li2(double x) noexcept nogil:
    cdef double t = x, sign = 1.0, add = 0.0, lx, l1
    if x < -1.0:
        lx = log(-x)
        add = -PI2_6 - 0.5 * lx * lx
        sign = -1.0
        t = 1.0 / x
    if t < -0.5:
        l1 = log1p(-t)
        add += sign * (-0.5 * l1 * l1)
        sign = -sign
        t = t / (t - 1.0)
    if t == 1.0:
        return add + sign * PI2_6
    if t > 0.5:
        add += sign * (PI2_6 - log(t) * log1p(-t))
        sign = -sign
        t = 1.0 - t
    return add + sign * _li2_series(t)


def dilog(x):
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr > 1.0) or np.any(np.isnan(arr)):
        raise ValueError("dilog is real only for x <= 1")
    scalar = arr.ndim == 0
    flat = np.ascontiguousarray(arr.ravel())
    cdef double[::1] xv = flat
    out = np.empty(flat.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        o[i] = _li2(xv[i])
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def compensated_sum(values, double shift=0.0, bint square=False):
    """Neumaier sum of (v - shift) or (v - shift)^2, in index order."""
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, n = v.shape[0]
    cdef double s = 0.0, comp = 0.0, t, term
    with nogil:
        for i in range(n):
            term = v[i] - shift
            if square:
                term = term * term
            t = s + term
            if fabs(s) >= fabs(term):
                comp += (s - t) + term
            else:
                comp += (term - t) + s
            s = t
    return s + comp
