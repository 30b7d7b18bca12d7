"""Dilogarithm and the Gauss-Chebyshev rule used by the closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .config import K_MAX


def dilog(x):
    """Real dilogarithm Li2(x) = -int_0^x ln(1-u)/u du for x <= 1.

    Power series on |x| <= 1/2, mapped there by inversion (x < -1), Landen
    (-1 <= x < -1/2) and reflection (x > 1/2).  Raises ValueError for x > 1.
    """
    return _kernels.dilog(x)


@dataclass(frozen=True)
class ChebyshevRule:
    """K-node rule: int_lo^hi g ~ pi (hi-lo)/(2K) sum sqrt(1 - w_k^2) g(node_k)."""

    K: int
    nodes: np.ndarray
    sqrt_weights: np.ndarray

    def mapped_nodes(self, lo, hi):
        return 0.5 * (hi - lo) * self.nodes + 0.5 * (hi + lo)

    def weighted_sum(self, values):
        """sum_k sqrt(1 - w_k^2) * values_k, mirror-image nodes summed first."""
        values = np.asarray(values, dtype=float)
        m = self.K // 2
        paired = values[:m] + values[::-1][:m]
        total = float(np.dot(self.sqrt_weights[:m], paired))
        if self.K % 2:
            total += float(self.sqrt_weights[m] * values[m])
        return total

    def integrate(self, g, lo, hi):
        return math.pi * (hi - lo) / (2 * self.K) * self.weighted_sum(g(self.mapped_nodes(lo, hi)))


@lru_cache(maxsize=32)
def chebyshev_rule(K: int) -> ChebyshevRule:
    if not 1 <= K <= K_MAX:
        raise ValueError(f"K must lie in [1, {K_MAX}], got {K}")
    k = np.arange(1, K + 1)
    nodes = np.cos((2 * k - 1) * math.pi / (2 * K))
    # exact mirror symmetry about 0
    m = K // 2
    nodes[K - m:] = -nodes[:m][::-1]
    if K % 2:
        nodes[m] = 0.0
    nodes.setflags(write=False)
    sw = np.sqrt(1.0 - nodes * nodes)
    sw.setflags(write=False)
    return ChebyshevRule(K, nodes, sw)
