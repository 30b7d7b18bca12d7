import math

import numpy as np
import pytest

import oracles
from pinchwpc.config import (
    PinchPositions,
    SystemConfig,
    UserPosition,
    dbm_to_watt,
    dump_config,
    parse_config,
    watt_to_dbm,
)
from pinchwpc.errors import InvalidConfig
from pinchwpc.physics import (
    aligned_denominator,
    channel_coefficients,
    derived_params,
    harvested_energy,
    snr_aligned,
    snr_general,
    uplink_power,
)


def test_derived_values(cfg):
    d = derived_params(cfg)
    assert d.wavelength == pytest.approx(0.111034, abs=5e-7)
    assert d.guided_wavelength == pytest.approx(0.079310, abs=5e-7)
    assert d.epsilon == pytest.approx(2 ** (2.5 / 0.6) - 1, rel=1e-14)
    assert d.epsilon == pytest.approx(16.959, abs=5e-4)
    assert d.chi == pytest.approx(oracles.snr_numerator(cfg) / oracles.threshold(cfg), rel=1e-12)


def test_derived_scale_linear_in_power_and_antennas(cfg):
    base = derived_params(cfg).chi
    assert derived_params(cfg.replace(Ps_dBm=cfg.Ps_dBm + 10)).chi == pytest.approx(10 * base, rel=1e-12)
    assert derived_params(cfg.replace(N1=2, N2=3)).chi == pytest.approx(6 * base, rel=1e-15)


@pytest.mark.parametrize("tau", [0.0, 1.0, -0.1, 1.5])
def test_tau_outside_unit_interval_rejected(tau):
    with pytest.raises(InvalidConfig) as err:
        SystemConfig(tau=tau)
    assert err.value.field == "tau"


def test_snr_general_symmetric_point(cfg):
    c = cfg.replace(alpha=0.0)
    d = derived_params(c)
    got = snr_general(c, 0.0, 0.0, 0.0, 0.0)
    assert got == pytest.approx(d.beta**2 * d.rho_t / 169.0, rel=1e-14)


def test_snr_general_matches_hand_formula(cfg):
    x, y, x1, x2 = 5.0, 2.0, 5.0, 5.0
    S = oracles.snr_numerator(cfg)
    r1 = (x - x1) ** 2 + (y - 2.0) ** 2 + 9.0
    r2 = (x - x2) ** 2 + (y + 2.0) ** 2 + 9.0
    want = S * math.exp(-0.01 * (x1 + x2)) / (r1 * r2)
    assert snr_general(cfg, x, y, x1, x2) == pytest.approx(want, rel=1e-12)


def test_snr_general_off_aligned_point(cfg):
    x, y, x1, x2 = 2.0, -1.5, 7.0, 0.5
    S = oracles.snr_numerator(cfg)
    r1 = (x - x1) ** 2 + (y - 2.0) ** 2 + 9.0
    r2 = (x - x2) ** 2 + (y + 2.0) ** 2 + 9.0
    want = S * math.exp(-0.01 * (x1 + x2)) / (r1 * r2)
    assert snr_general(cfg, x, y, x1, x2) == pytest.approx(want, rel=1e-12)


def test_general_reduces_to_aligned_random():
    rng = np.random.default_rng(1)
    for _ in range(200):
        c = SystemConfig(
            alpha=rng.uniform(0, 0.2), h=rng.uniform(0.5, 8), L=rng.uniform(0, 20),
            Dx=rng.uniform(1, 40), Dy=rng.uniform(1, 40), Ps_dBm=rng.uniform(0, 60),
            tau=rng.uniform(0.05, 0.95),
        )
        x = rng.uniform(0, c.Dx, 50)
        y = rng.uniform(-c.Dy / 2, c.Dy / 2, 50)
        np.testing.assert_allclose(snr_general(c, x, y, x, x), snr_aligned(c, x, y), rtol=1e-12)


def test_aligned_properties(cfg):
    x = np.linspace(0, 10, 11)
    lossless = cfg.replace(alpha=0.0)
    v = snr_aligned(lossless, x, 1.3)
    assert np.all(v == v[0])
    assert np.all(np.diff(snr_aligned(cfg, x, 1.3)) < 0)
    y = np.linspace(-5, 5, 101)
    assert np.array_equal(snr_aligned(cfg, 3.0, y), snr_aligned(cfg, 3.0, -y))


def test_aligned_denominator_minimum():
    assert aligned_denominator(4.0, 3.0, 10.0) == 900.0
    assert aligned_denominator(-4.0, 3.0, 10.0) == 900.0


def test_array_gain_scaling(cfg):
    x, y = np.meshgrid(np.linspace(0, 10, 7), np.linspace(-5, 5, 7))
    np.testing.assert_allclose(
        snr_aligned(cfg.replace(N1=2, N2=3), x, y), 6 * snr_aligned(cfg, x, y), rtol=1e-15
    )


def test_dbm_round_trip():
    for dbm in np.linspace(-120, 80, 41):
        assert watt_to_dbm(dbm_to_watt(dbm)) == pytest.approx(dbm, abs=1e-12)
    assert dbm_to_watt(30.0) == 1.0


def test_harvested_energy(cfg):
    d = derived_params(cfg)
    no_loss = harvested_energy(cfg, 0.0, 2.0, 0.0)
    assert no_loss == pytest.approx(cfg.eta * d.Et * d.beta / 9.0, rel=1e-14)
    # independent re-evaluation at (5, 2) with the PA at x = 5
    lam = oracles.C / cfg.fc
    et = cfg.tau * cfg.T * oracles.watts(cfg.Ps_dBm)
    want = cfg.eta * et * math.exp(-0.05) * (lam / (4 * math.pi)) ** 2 / 9.0
    assert harvested_energy(cfg, 5.0, 2.0, 5.0) == pytest.approx(want, rel=1e-12)
    doubled = harvested_energy(cfg.replace(Ps_dBm=cfg.Ps_dBm + 10 * math.log10(2)), 5.0, 2.0, 5.0)
    assert doubled == pytest.approx(2 * want, rel=1e-12)


def test_uplink_power_matches_rho(cfg):
    # directly below PA-1 the uplink power is P_t beta / h^2
    d = derived_params(cfg)
    pu = uplink_power(cfg, 0.0, 2.0, 0.0)
    assert pu == pytest.approx(d.Pt * d.beta / 9.0, rel=1e-12)


def test_phase_terms_unit_modulus(cfg):
    h1, h2, g1, g2 = channel_coefficients(cfg, 5.0, 2.0, 3.0, 6.0)
    assert abs(g1) == pytest.approx(1.0, abs=1e-14)
    assert abs(g2) == pytest.approx(1.0, abs=1e-14)
    d = derived_params(cfg)
    snr = abs(h1 * g1) ** 2 * abs(h2 * g2) ** 2 * d.rho_t * math.exp(-cfg.alpha * 9.0)
    assert snr == pytest.approx(float(snr_general(cfg, 5.0, 2.0, 3.0, 6.0)), rel=1e-12)


def test_position_bounds(cfg):
    UserPosition(10.0, -5.0).check_bounds(cfg)
    with pytest.raises(InvalidConfig):
        UserPosition(10.5, 0.0).check_bounds(cfg)
    with pytest.raises(InvalidConfig):
        PinchPositions(-1.0, 2.0).check_bounds(cfg)


def test_config_round_trip():
    cfg = SystemConfig(alpha=0.037, L=5.5, Ps_dBm=33.3, N1=2, K=80)
    assert parse_config(dump_config(cfg)) == cfg


def test_config_parse_rules():
    cfg = parse_config("# comment\nalpha = 0.02  # trailing\n\nN1 = 3\n")
    assert cfg.alpha == 0.02 and cfg.N1 == 3 and isinstance(cfg.N1, int)
    for text, field in (("bogus = 1", "bogus"), ("h = 1\nh = 2", "h"), ("h = abc", "h"), ("h = -1", "h")):
        with pytest.raises(InvalidConfig) as err:
            parse_config(text)
        assert err.value.field == field
