"""Time the compiled and numpy kernel backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--samples 1000000]
"""
import argparse
import math
import time

import numpy as np

from pinchwpc import _kernels
from pinchwpc.config import SystemConfig
from pinchwpc.physics import derived_params, outage_threshold
from pinchwpc.rng import stream_key


def workloads(samples, grid):
    cfg = SystemConfig(Ps_dBm=35.0)
    d = derived_params(cfg)
    geo = (cfg.Dx, cfg.Dy, cfg.h, cfg.L, cfg.alpha, d.snr_scale)
    eps = outage_threshold(cfg.R, cfg.tau)
    coef = (1 - cfg.tau) / math.log(2)
    key = stream_key(42)
    x = -np.logspace(-6, 8, 10**5)
    v = np.random.default_rng(0).random(samples)
    return {
        f"mc_rates n={samples}": lambda k: k.mc_rates(key, samples, False, 0, *geo, coef, 1),
        f"mc_rates n={samples} 4 threads": lambda k: k.mc_rates(key, samples, False, 0, *geo, coef, 4),
        f"quad_outage_count {grid}x{grid}": lambda k: k.quad_outage_count(grid, grid, 0, *geo, eps),
        f"quad_rate_rows {grid}x{grid}": lambda k: k.quad_rate_rows(grid, grid, 0, *geo),
        "dilog 1e5 points": lambda k: k.dilog(x),
        f"compensated_sum n={samples}": lambda k: k.compensated_sum(v),
    }


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--samples", type=int, default=10**6)
    ap.add_argument("--grid", type=int, default=2000)
    args = ap.parse_args()

    backends = _kernels.available_backends()
    print(f"backends: {', '.join(backends)} (active: {_kernels.BACKEND})")
    print(f"{'workload':40s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads(args.samples, args.grid).items():
        t = {b: best_of(lambda: fn(_kernels.get_backend(b)), args.repeat) for b in backends}
        row = f"{name:40s}" + "".join(f"{t[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) > 1:
            row += f"{t['python'] / t['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
