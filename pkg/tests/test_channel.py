import numpy as np
import pytest
from scipy import stats

from ducnoma.channel import (ChannelProfile, PowerAllocation, SicModel, SystemConfig,
                             collinear_geometry, db_to_linear, mean_gain, sample_fading)


@pytest.mark.parametrize("d, nu, expected", [(10, 2, 0.01), (5, 2, 0.04), (1, 3.7, 1.0)])
def test_mean_gain(d, nu, expected):
    assert mean_gain(d, nu) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("d", [0, -1])
def test_mean_gain_rejects_nonpositive_distance(d):
    with pytest.raises(ValueError):
        mean_gain(d, 2)


@pytest.mark.parametrize("d_sr, expected", [(5, (5, 5)), (9.5, (9.5, 0.5)), (1, (1, 9))])
def test_collinear_geometry(d_sr, expected):
    assert collinear_geometry(10, d_sr) == pytest.approx(expected)


@pytest.mark.parametrize("d_sr", [0, 10, 12, -3])
def test_collinear_geometry_domain(d_sr):
    with pytest.raises(ValueError):
        collinear_geometry(10, d_sr)


def test_default_profile_gains():
    p = ChannelProfile()
    assert (p.lambda1, p.lambda2, p.lambda3) == pytest.approx((0.01, 0.04, 0.04))


@pytest.mark.parametrize("kwargs", [
    dict(phi1=0.4, phi2=0.6),
    dict(phi1=0.9, phi2=0.2),
    dict(theta2=0.5, theta3=0.7),
    dict(theta2=1.2, theta3=0.7),
    dict(theta3=0.0),
])
def test_power_allocation_invariants(kwargs):
    with pytest.raises(ValueError):
        PowerAllocation(**kwargs)


def test_invalid_sic_and_snr():
    with pytest.raises(ValueError):
        SicModel(kappa1=1.5)
    with pytest.raises(ValueError):
        SystemConfig(rho=0.0)
    with pytest.raises(ValueError):
        ChannelProfile(d_sd=4, d_sr=5, d_rd=5)  # direct link stronger than hops


def test_db_conversion_and_replace():
    cfg = SystemConfig.from_db(30)
    assert cfg.rho == pytest.approx(1000)
    assert cfg.snr_db == pytest.approx(30)
    assert cfg.replace(snr_db=40).rho == pytest.approx(1e4)
    assert db_to_linear(np.array([0, 10])) == pytest.approx([1, 10])


def test_perfect_sic_residuals_vanish(defaults):
    s = sample_fading(defaults, np.random.default_rng(1), 1000)
    assert np.all(s.gbar2 == 0) and np.all(s.gbar3 == 0)
    assert len(s) == 1000


def test_sampling_is_deterministic(defaults):
    a = sample_fading(defaults, np.random.default_rng(5), 100)
    b = sample_fading(defaults, np.random.default_rng(5), 100)
    assert np.array_equal(a.g1, b.g1) and np.array_equal(a.g3, b.g3)


def test_exponential_marginals():
    cfg = SystemConfig.from_db(30).with_sic(0.04**2)
    n = 10**6
    s = sample_fading(cfg, np.random.default_rng(2024), n)
    lam = cfg.profile
    assert s.g1.mean() == pytest.approx(0.01, abs=3 * 0.01 / 1e3)
    tail = np.mean(s.g2 > lam.lambda2)
    assert tail == pytest.approx(np.exp(-1), abs=0.002)
    for g, mean in [(s.g1, lam.lambda1), (s.g2, lam.lambda2), (s.g3, lam.lambda3),
                    (s.gbar2, 0.0016 * lam.lambda2), (s.gbar3, 0.0016 * lam.lambda3)]:
        res = stats.kstest(g[:10**5], "expon", args=(0, mean))
        assert res.pvalue > 0.01
    assert abs(np.corrcoef(s.g1, s.g2)[0, 1]) < 0.01
