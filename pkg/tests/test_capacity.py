import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from ducnoma import capacity as cap
from ducnoma.channel import ChannelProfile, SystemConfig
from ducnoma.montecarlo import mc_rate_cdf, mc_rates, sup_distance
from ducnoma.special import exp_ei

from conftest import at_db

LOG2E = 1 / math.log(2)

# mpmath quadrature (30 digits) of the defining integrals at 30 dB
EC1_30DB = 0.958345793565576027
EC2_PERFECT_30DB = 0.738911894833397436
EC2_KAPPA_0016_30DB = 0.724551499191728180
EC3_PERFECT_30DB = 1.25367995990591577
EC3_KAPPA_0016_30DB = 1.22131484596834163


def quad_ec(integrand):
    """(1/(2 ln 2)) * integral_0^inf integrand, split to help QUADPACK."""
    total = 0.0
    for lo, hi in [(0, 1), (1, 10), (10, 100), (100, math.inf)]:
        total += integrate.quad(integrand, lo, hi, epsabs=1e-14, epsrel=1e-12, limit=200)[0]
    return total / (2 * math.log(2))


def quad_ec2(cfg):
    p, g, q = cap.relay_residual_ratio(cfg), cap.uplink_ratio(cfg), cap.s2_exponent_rate(cfg)
    pf = (lambda z: 1.0) if math.isinf(p) else (lambda z: p / (p + z))
    return quad_ec(lambda z: pf(z) * g / (g + z) * math.exp(-q * z) / (1 + z))


def quad_ec3(cfg):
    c, r = cap.dest_residual_ratio(cfg), cap.s3_exponent_rate(cfg)
    cf = (lambda y: 1.0) if math.isinf(c) else (lambda y: c / (c + y))
    return quad_ec(lambda y: cf(y) * math.exp(-r * y) / (1 + y))


def test_frozen_values_at_30db(defaults):
    imp = defaults.with_sic(0.04**2)
    assert cap.ec_s1(defaults) == pytest.approx(EC1_30DB, rel=1e-12)
    assert cap.ec_s2_perfect(defaults) == pytest.approx(EC2_PERFECT_30DB, rel=1e-12)
    assert cap.ec_s2_imperfect(imp) == pytest.approx(EC2_KAPPA_0016_30DB, rel=1e-12)
    assert cap.ec_s3_perfect(defaults) == pytest.approx(EC3_PERFECT_30DB, rel=1e-12)
    assert cap.ec_s3_imperfect(imp) == pytest.approx(EC3_KAPPA_0016_30DB, rel=1e-12)


def test_intermediate_constants(defaults):
    assert cap.uplink_ratio(defaults) == pytest.approx(40 / 7)
    assert cap.s2_exponent_rate(defaults) == pytest.approx(0.275)
    assert cap.s3_exponent_rate(defaults) == pytest.approx(1 / 7)
    assert cap.ec_s1(defaults) == pytest.approx(0.957, abs=0.01)


def test_s3_perfect_direct_product(defaults):
    assert cap.ec_s3_perfect(defaults) == pytest.approx(-0.5 * LOG2E * exp_ei(1 / 7), rel=1e-15)


def printed_ec2_imperfect(cfg):
    p, g, q = cap.relay_residual_ratio(cfg), cap.uplink_ratio(cfg), cap.s2_exponent_rate(cfg)
    E = exp_ei
    return (p * LOG2E / (2 * (p - 1))) * (
        g / (g - 1) * (-E(q) + E(g * q)) - g / (g - p) * (-E(p * q) + E(g * q)))


def printed_ec2_perfect(cfg):
    g, q = cap.uplink_ratio(cfg), cap.s2_exponent_rate(cfg)
    return g * LOG2E / (2 * (g - 1)) * (-exp_ei(q) + exp_ei(g * q))


def printed_ec3_imperfect(cfg):
    a, pr = cfg.alloc, cfg.profile
    j = a.theta3 * pr.lambda1
    b = a.theta2 * cfg.sic.kappa2 * pr.lambda3
    return LOG2E / 2 * j / (j - b) * (
        -exp_ei(1 / (a.theta3 * cfg.rho * pr.lambda1)) + exp_ei(1 / (a.theta2 * cfg.sic.kappa2 * cfg.rho * pr.lambda3)))


@pytest.mark.parametrize("snr_db", [0, 10, 25, 40, 55])
@pytest.mark.parametrize("kappa", [0.02**2, 0.04**2, 0.3])
def test_divided_difference_forms_match_partial_fractions(snr_db, kappa):
    cfg = at_db(snr_db, kappa)
    assert cap.ec_s2_imperfect(cfg) == pytest.approx(printed_ec2_imperfect(cfg), rel=1e-9)
    assert cap.ec_s3_imperfect(cfg) == pytest.approx(printed_ec3_imperfect(cfg), rel=1e-9)
    assert cap.ec_s2_perfect(cfg) == pytest.approx(printed_ec2_perfect(cfg), rel=1e-11)


@pytest.mark.parametrize("snr_db", [5, 30, 50])
def test_against_quadrature(snr_db):
    for k in (0.0, 0.04**2, 0.5):
        cfg = at_db(snr_db, k)
        assert cap.ec_s2(cfg) == pytest.approx(quad_ec2(cfg), rel=1e-8)
        assert cap.ec_s3(cfg) == pytest.approx(quad_ec3(cfg), rel=1e-8)


@pytest.mark.parametrize("kappa1", [
    0.1 / 0.9,                          # p = 1
    0.1 / (0.9 * (40 / 7)),             # p = g
    0.1 / 0.9 * (1 + 1e-11),            # p within rounding of 1
])
def test_degenerate_s2_constants(kappa1):
    cfg = SystemConfig.from_db(30).with_sic(kappa1, 0.0)
    v = cap.ec_s2_imperfect(cfg)
    assert math.isfinite(v)
    assert v == pytest.approx(quad_ec2(cfg), rel=1e-5)


def test_degenerate_s3_constant():
    k2 = 0.7 * 0.01 / 0.04  # theta3 lambda1 == theta2 kappa2 lambda3
    cfg = SystemConfig.from_db(30).with_sic(0.0, k2)
    assert cap.ec_s3_imperfect(cfg) == pytest.approx(quad_ec3(cfg), rel=1e-8)


def test_limits_as_kappa_vanishes(defaults):
    for k in (1e-9, 1e-12):
        cfg = defaults.with_sic(k)
        assert cap.ec_s2_imperfect(cfg) == pytest.approx(cap.ec_s2_perfect(defaults), abs=1e-4)
        assert cap.ec_s3_imperfect(cfg) == pytest.approx(cap.ec_s3_perfect(defaults), abs=1e-4)


def test_vanishing_snr():
    cfg = SystemConfig(rho=1e-12).with_sic(0.04**2)
    for f in (cap.ec_s1, cap.ec_s2_imperfect, cap.ec_s3_imperfect,
              cap.ec_s2_perfect, cap.ec_s3_perfect):
        assert 0 <= f(cfg) < 1e-9


def test_weak_direct_link_limit():
    # g -> infinity as lambda1 -> 0: capacity -> -(log2 e / 2) e^q Ei(-q)
    cfg = SystemConfig(rho=1000.0, profile=ChannelProfile(d_sd=1e4, d_sr=5, d_rd=5))
    q = cap.s2_exponent_rate(cfg)
    assert cap.ec_s2_perfect(cfg) == pytest.approx(-0.5 * LOG2E * exp_ei(q), rel=1e-6)


def test_imperfect_forms_require_residual(defaults):
    with pytest.raises(ValueError):
        cap.ec_s2_imperfect(defaults)
    with pytest.raises(ValueError):
        cap.ec_s3_imperfect(defaults)


def test_esc_composition(defaults):
    mixed = defaults.with_sic(0.0016, 0.0)
    e = cap.esc(mixed)
    assert e.ec2 == cap.ec_s2_imperfect(mixed)
    assert e.ec3 == cap.ec_s3_perfect(mixed)
    assert e.sic_mode == "imperfect"
    p = cap.esc(defaults)
    assert p.sic_mode == "perfect"
    assert p.esc == p.ec1 + p.ec2 + p.ec3


@pytest.mark.parametrize("kappa", [0.0, 0.04**2])
def test_esc_monotone_in_snr(kappa):
    vals = [cap.esc(at_db(db, kappa)).esc for db in range(-10, 81, 5)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


@settings(max_examples=50, deadline=None)
@given(st.floats(-10, 70), st.floats(1e-6, 1.0))
def test_perfect_sic_dominates(snr_db, kappa):
    assert cap.esc(at_db(snr_db)).esc >= cap.esc(at_db(snr_db, kappa)).esc


def test_cdf_shapes(defaults):
    cfg = defaults.with_sic(0.04**2)
    z = np.logspace(-4, 4, 400)
    for f in (cap.cdf_z, cap.cdf_y, cap.cdf_u, cap.cdf_v, cap.cdf_w):
        vals = f(z, cfg)
        assert f(0.0, cfg) == 0
        assert np.all(np.diff(vals) >= 0)
        assert f(1e9, cfg) == pytest.approx(1.0)


@pytest.mark.parametrize("kappa", [0.0, 0.04**2])
def test_cdfs_match_simulation(kappa):
    cfg = at_db(30, kappa)
    x, _ = mc_rate_cdf(cfg, "z", trials=10**6, seed=3)
    assert sup_distance(x, lambda v: cap.cdf_z(v, cfg)) < 0.005
    x, _ = mc_rate_cdf(cfg, "y", trials=10**6, seed=4)
    assert sup_distance(x, lambda v: cap.cdf_y(v, cfg)) < 0.005


def test_perfect_y_is_exponential(defaults):
    y = np.linspace(0, 50, 11)
    np.testing.assert_allclose(cap.cdf_y(y, defaults), 1 - np.exp(-y / (0.7 * 1000 * 0.01)))


def test_no_sic_relay_cdf():
    cfg = at_db(30, 1.0)
    x, _ = mc_rate_cdf(cfg, "u", trials=10**5, seed=8)
    assert cap.relay_residual_ratio(cfg) == pytest.approx(0.1 / 0.9)
    assert sup_distance(x, lambda v: cap.cdf_u(v, cfg)) < 0.01


@pytest.mark.parametrize("kappa", [0.0, 0.04**2])
def test_ergodic_capacities_match_simulation(kappa):
    cfg = at_db(30, kappa)
    est = mc_rates(cfg, trials=10**6, seed=21)
    e = cap.esc(cfg)
    for key, val in (("c1", e.ec1), ("c2", e.ec2), ("c3", e.ec3)):
        assert abs(est[key].z_score(val)) < 3
