"""Counter-based uniform generator keyed by (seed, counter).

Output ``j`` of a stream is ``mix64(key + (j + 1) * GOLDEN)``, i.e. the
j-th output of SplitMix64 started at ``key``.  Any index can be produced
without touching the others, so sample ``i`` of a Monte Carlo run is the
same whichever worker computes it.  Sample ``i`` uses counters ``2i``
(x coordinate) and ``2i + 1`` (y coordinate).
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def mix64(z):
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed):
    """Derive the 64-bit stream key from an integer seed."""
    return mix64((int(seed) + GOLDEN) & MASK64)


class CounterRNG:
    """Scalar reference implementation; the kernels vectorize the same map."""

    def __init__(self, seed):
        self.seed = int(seed)
        self.key = stream_key(seed)

    def raw(self, counter):
        return mix64(self.key + (counter + 1) * GOLDEN)

    def uniform(self, counter):
        return (self.raw(counter) >> 11) * 2.0**-53

    def sample_pair(self, index):
        """The two uniforms driving Monte Carlo sample ``index``."""
        return self.uniform(2 * index), self.uniform(2 * index + 1)
