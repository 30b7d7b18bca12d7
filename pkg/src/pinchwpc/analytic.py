"""Closed-form outage probability and ergodic rate for the aligned deployment.

Both pinching antennas sit at the user's abscissa, so the SNR is
``S exp(-2 alpha x) / p(y)`` with ``p(y) = (y^2 + h^2 - L^2/4)^2 + h^2 L^2``
and ``S = beta^2 rho_t N1 N2``.  Outage uses the six-row condition table
for lossy waveguides and the three-row table for lossless ones; both need
``h > L/2``.  ``outage_probability`` falls back to the grid oracle when
they do not apply.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import mc
from .config import SystemConfig
from .errors import InvalidAlpha, NoRegime, UnsupportedGeometry
from .physics import aligned_denominator, derived_params
from .specfun import chebyshev_rule, dilog

LN2 = math.log(2.0)


class Table(str, enum.Enum):
    LOSSY = "lossy"
    LOSSLESS = "lossless"
    ORACLE = "oracle"


@dataclass(frozen=True)
class RegimeTag:
    table: Table
    row: int

    def __str__(self):
        return f"{self.table.value}:{self.row}"


@dataclass(frozen=True)
class OutageResult:
    p_out: float
    regime: RegimeTag


@dataclass(frozen=True)
class RateResult:
    value: float
    form: Table


@dataclass(frozen=True)
class LossyThresholds:
    """Abscissae where chi exp(-2 alpha x) crosses h^2L^2, p(0) and p(Dy/2)."""

    a: float
    b: float
    c: float


@dataclass(frozen=True)
class _Levels:
    A: float  # h^2 - L^2/4
    hL2: float
    P0: float  # p(0)
    P1: float  # p(Dy/2)
    chi: float
    chi_far: float  # chi exp(-2 alpha Dx)


def _levels(cfg, d, alpha):
    A = cfg.h * cfg.h - 0.25 * cfg.L * cfg.L
    hL2 = cfg.h * cfg.h * cfg.L * cfg.L
    chi = d.chi
    return _Levels(
        A=A,
        hL2=hL2,
        P0=A * A + hL2,
        P1=(0.25 * cfg.Dy * cfg.Dy + A) ** 2 + hL2,
        chi=chi,
        chi_far=chi * math.exp(-2.0 * alpha * cfg.Dx),
    )


def _crossing(alpha, chi, level):
    if level == 0.0:
        return math.inf
    if chi == 0.0:
        return -math.inf
    return math.log(chi / level) / (2.0 * alpha)


def lossy_thresholds(cfg: SystemConfig, derived=None) -> LossyThresholds:
    if cfg.alpha == 0:
        raise InvalidAlpha("thresholds a, b, c need alpha > 0")
    lv = _levels(cfg, derived or derived_params(cfg), cfg.alpha)
    return LossyThresholds(
        a=_crossing(cfg.alpha, lv.chi, lv.hL2),
        b=_crossing(cfg.alpha, lv.chi, lv.P0),
        c=_crossing(cfg.alpha, lv.chi, lv.P1),
    )


def table1_conditions(cfg: SystemConfig, derived=None):
    """Truth value of each lossy-table condition row, as printed."""
    lv = _levels(cfg, derived or derived_params(cfg), cfg.alpha)
    P0, P1, chi, far, pos = lv.P0, lv.P1, lv.chi, lv.chi_far, lv.A > 0
    return (
        P0 >= chi,
        P0 < chi and P0 > far and P1 >= chi and pos,
        P0 < chi and P0 > far and P1 < chi and P1 > far and pos,
        P0 <= far and P1 >= chi and pos,
        P0 <= far and P1 < chi and P1 > far and pos,
        P1 <= far,
    )


def table2_conditions(cfg: SystemConfig, derived=None):
    """Truth value of each lossless-table condition row, as printed."""
    lv = _levels(cfg, derived or derived_params(cfg), 0.0)
    return (
        lv.P0 > lv.chi,
        lv.A > 0 and lv.P0 <= lv.chi and lv.P1 >= lv.chi,
        lv.P1 < lv.chi,
    )


def classify_regime(cfg: SystemConfig, table: Table, derived=None) -> RegimeTag:
    """Unique matching row of the lossy or lossless condition table.

    The tables are derived for h > L/2; for h <= L/2 even their first and
    last rows can be wrong, so NoRegime is raised there.
    """
    table = Table(table)
    if table is Table.LOSSY and cfg.alpha == 0:
        raise InvalidAlpha("lossy table needs alpha > 0")
    if cfg.h * cfg.h - 0.25 * cfg.L * cfg.L <= 0:
        raise NoRegime(f"h = {cfg.h} <= L/2 = {cfg.L / 2}: condition tables do not apply")
    if table is Table.LOSSY:
        conds = table1_conditions(cfg, derived)
    elif table is Table.LOSSLESS:
        conds = table2_conditions(cfg, derived)
    else:
        raise ValueError("no condition table for the oracle")
    hits = [i + 1 for i, ok in enumerate(conds) if ok]
    if len(hits) != 1:
        raise NoRegime(f"{table.value} table rows matched: {hits}")
    return RegimeTag(table, hits[0])


def _clip01(p):
    return min(1.0, max(0.0, p))


def outage_lossy(cfg: SystemConfig, K=None, derived=None) -> OutageResult:
    """Outage probability for alpha > 0 from the six-row table."""
    d = derived or derived_params(cfg)
    tag = classify_regime(cfg, Table.LOSSY, d)
    if tag.row == 1:
        return OutageResult(1.0, tag)
    if tag.row == 6:
        return OutageResult(0.0, tag)

    K = K or cfg.K
    rule = chebyshev_rule(K)
    lv = _levels(cfg, d, cfg.alpha)
    alpha, Dx, Dy, h, L = cfg.alpha, cfg.Dx, cfg.Dy, cfg.h, cfg.L

    def radius(phi):
        # half-width in y of the no-outage strip at abscissa phi
        inner = np.sqrt(np.maximum(lv.chi * np.exp(-2.0 * alpha * phi) - lv.hL2, 0.0))
        return np.sqrt(np.maximum(inner + 0.25 * L * L - h * h, 0.0))

    def chebsum(lo, hi):
        return rule.weighted_sum(radius(rule.mapped_nodes(lo, hi)))

    b = _crossing(alpha, lv.chi, lv.P0)
    c = _crossing(alpha, lv.chi, lv.P1)
    if tag.row == 2:
        p = 1.0 + math.pi / (2 * alpha * Dx * Dy * K) * math.log(lv.P0 / lv.chi) * chebsum(0.0, b)
    elif tag.row == 3:
        p = (
            1.0
            + math.log(lv.P1 / lv.chi) / (2 * alpha * Dx)
            - math.pi / (2 * alpha * Dx * Dy * K) * math.log(lv.P1 / lv.P0) * chebsum(c, b)
        )
    elif tag.row == 4:
        p = 1.0 - math.pi / (Dy * K) * chebsum(0.0, Dx)
    else:
        p = (1.0 + math.log(lv.P1 / lv.chi) / (2 * alpha * Dx)) * (1.0 - math.pi / (Dy * K) * chebsum(c, Dx))
    return OutageResult(_clip01(p), tag)


def outage_lossless(cfg: SystemConfig, derived=None) -> OutageResult:
    """Outage probability of the same geometry with a lossless waveguide (alpha ignored)."""
    d = derived or derived_params(cfg)
    tag = classify_regime(cfg, Table.LOSSLESS, d)
    if tag.row == 1:
        return OutageResult(1.0, tag)
    if tag.row == 3:
        return OutageResult(0.0, tag)
    lv = _levels(cfg, d, 0.0)
    width = math.sqrt(max(math.sqrt(lv.chi - lv.hL2) + 0.25 * cfg.L * cfg.L - cfg.h * cfg.h, 0.0))
    return OutageResult(_clip01(1.0 - 2.0 / cfg.Dy * width), tag)


def ergodic_lossy(cfg: SystemConfig, K=None, derived=None) -> float:
    """Ergodic rate (bits/channel use) for alpha > 0, dilogarithm form."""
    if cfg.alpha == 0:
        raise InvalidAlpha("lossy ergodic rate needs alpha > 0; use ergodic_lossless")
    d = derived or derived_params(cfg)
    K = K or cfg.K
    rule = chebyshev_rule(K)
    u = rule.mapped_nodes(0.0, 0.5 * cfg.Dy)
    p = aligned_denominator(u, cfg.h, cfg.L)
    S = d.snr_scale
    diff = dilog(-S * math.exp(-2.0 * cfg.alpha * cfg.Dx) / p) - dilog(-S / p)
    pref = math.pi * (1.0 - cfg.tau) / (4 * K * cfg.Dx * cfg.alpha * LN2)
    return pref * rule.weighted_sum(diff)


def _log_atan_pair(r, s):
    # r ln(r^2 + 4 s^2) + 4 s atan(r / (2 s)), continuous at s = 0
    val = r * math.log(r * r + 4.0 * s * s) if (r != 0.0 or s != 0.0) else 0.0
    if s > 0.0:
        val += 4.0 * s * math.atan(r / (2.0 * s))
    return val


def ergodic_lossless(cfg: SystemConfig, derived=None) -> float:
    """Ergodic rate with a lossless waveguide (alpha ignored), closed form.

    Uses the prefactor (1 - tau)/(Dy ln 2), which is what the integration-by-
    parts chain yields for 2(1 - tau)/(Dy ln 2) * int_0^{Dy/2} ln(1 + S/p(y)) dy.
    """
    d = derived or derived_params(cfg)
    h, L, Dy = cfg.h, cfg.L, cfg.Dy
    A = h * h - 0.25 * L * L
    u = math.sqrt(A * A + h * h * L * L + d.snr_scale)
    v = math.sqrt(max(2.0 * (u - A), 0.0))
    s = math.sqrt(max(u - 0.25 * v * v, 0.0))
    r1, r2, r3, r4 = Dy + v, Dy - v, Dy + L, Dy - L
    bracket = (
        _log_atan_pair(r1, s)
        + _log_atan_pair(r2, s)
        - _log_atan_pair(r3, h)
        - _log_atan_pair(r4, h)
    )
    return (1.0 - cfg.tau) / (Dy * LN2) * bracket


def outage_probability(cfg: SystemConfig, K=None, grid=mc.DEFAULT_GRID, derived=None) -> OutageResult:
    """Closed-form outage when a table applies, else the midpoint-grid oracle."""
    try:
        if cfg.alpha == 0:
            return outage_lossless(cfg, derived)
        return outage_lossy(cfg, K, derived)
    except UnsupportedGeometry:
        return OutageResult(mc.quad_outage(cfg, grid), RegimeTag(Table.ORACLE, 0))


def ergodic_rate(cfg: SystemConfig, K=None, derived=None) -> RateResult:
    if cfg.alpha == 0:
        return RateResult(ergodic_lossless(cfg, derived), Table.LOSSLESS)
    return RateResult(ergodic_lossy(cfg, K, derived), Table.LOSSY)
