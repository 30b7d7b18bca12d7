
import pytest

import oracles
from pinchwpc import analytic, baseline, mc
from pinchwpc.config import SystemConfig
from pinchwpc.physics import snr_aligned

PS_GRID = (20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0)


def test_baseline_matches_pas_at_feed(cfg):
    lossless = cfg.replace(alpha=0.0)
    assert baseline.baseline_snr(cfg, 0.0, 0.0) == pytest.approx(float(snr_aligned(lossless, 0.0, 0.0)), rel=1e-15)


def test_pas_beats_baseline_far_away(cfg):
    lossless = cfg.replace(alpha=0.0)
    assert baseline.baseline_snr(cfg, cfg.Dx, 0.0) < snr_aligned(lossless, cfg.Dx, 0.0)


def test_baseline_hand_formula(cfg):
    x, y = 5.0, 2.0
    S = oracles.snr_numerator(cfg)
    want = S / ((x * x + (y - 2) ** 2 + 9) * (x * x + (y + 2) ** 2 + 9))
    assert baseline.baseline_snr(cfg, x, y) == pytest.approx(want, rel=1e-12)


def test_baseline_has_single_antennas(cfg):
    c = cfg.replace(N1=2, N2=2)
    assert baseline.baseline_snr(c, 1.0, 1.0) == baseline.baseline_snr(cfg, 1.0, 1.0)


def test_baseline_no_power(cfg):
    est = baseline.baseline_outage(cfg.replace(Ps_dBm=-100.0), mc.McSpec(samples=10**4))
    assert est.value == 1.0


@pytest.mark.parametrize("Ps", [30.0, 40.0, 45.0])
def test_baseline_mc_vs_quad(cfg, Ps):
    c = cfg.replace(Ps_dBm=Ps)
    o, r = baseline.baseline_estimates(c)
    assert abs(o.value - baseline.baseline_quad_outage(c)) <= max(3 * o.std_err, 1e-12)
    assert abs(r.value - baseline.baseline_quad_rate(c)) <= 3 * r.std_err + 1e-5


def test_pas_dominates_baseline_small_region(cfg):
    for ps in PS_GRID:
        c = cfg.replace(Ps_dBm=ps)
        pas = analytic.outage_probability(c).p_out
        assert baseline.baseline_quad_outage(c) >= pas
        assert baseline.baseline_outage(c).value >= mc.mc_outage(c).value


def test_ordering_reverses_with_heavy_loss():
    c = SystemConfig(alpha=0.1, Dx=30.0, Dy=30.0)
    worse = [
        ps for ps in range(20, 80, 2)
        if analytic.outage_probability(c.replace(Ps_dBm=float(ps))).p_out
        > baseline.baseline_quad_outage(c.replace(Ps_dBm=float(ps)))
    ]
    assert worse
