"""Outage probabilities, their high-SNR floors and diversity-order fits."""

from dataclasses import dataclass
import math

import numpy as np


class UnreachableTarget(ValueError):
    """The s1 target SINR exceeds phi1/phi2, so s1 is always in outage."""


def threshold(rate):
    """SINR threshold ``2**(2 C) - 1`` for a half-duplex target rate ``C``."""
    return math.expm1(2.0 * rate * math.log(2.0))


@dataclass(frozen=True)
class RateTargets:
    """Target rates (bits/s/Hz) of s1, s2, s3."""

    ct1: float = 0.5
    ct2: float = 0.5
    ct3: float = 0.5

    def __post_init__(self):
        for name in ("ct1", "ct2", "ct3"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def uniform(cls, ct):
        return cls(ct, ct, ct)

    @property
    def rt1(self):
        return threshold(self.ct1)

    @property
    def rt2(self):
        return threshold(self.ct2)

    @property
    def rt3(self):
        return threshold(self.ct3)


def _s1_margin(cfg, rt1):
    margin = cfg.alloc.phi1 - cfg.alloc.phi2 * rt1
    if margin <= 0.0:
        raise UnreachableTarget(
            f"target rate unreachable: OP = 1 (need phi1 > R/(R+1), R={rt1:.6g})")
    return margin


def op_s1_at(cfg, rt1):
    """s1 outage at SINR threshold ``rt1``."""
    x = rt1 / (cfg.profile.lambda1 * cfg.rho * _s1_margin(cfg, rt1))
    return -math.expm1(-x)


def op_s1(cfg, targets):
    return op_s1_at(cfg, targets.rt1)


def op_s1_high_snr(cfg, targets):
    """First-order expansion of :func:`op_s1`, decaying as 1/rho."""
    rt1 = targets.rt1
    return rt1 / (cfg.profile.lambda1 * cfg.rho * _s1_margin(cfg, rt1))


def _s2_prefactor(cfg, rt2):
    a, pr, k1 = cfg.alloc, cfg.profile, cfg.sic.kappa1
    relay = a.phi2 / (a.phi2 + a.phi1 * k1 * rt2)
    dest = a.theta2 * pr.lambda3 / (a.theta2 * pr.lambda3 + a.theta3 * pr.lambda1 * rt2)
    return relay * dest


def _s2_exponent(cfg, rt2):
    a, pr, rho = cfg.alloc, cfg.profile, cfg.rho
    return rt2 / (a.phi2 * rho * pr.lambda2) + rt2 / (a.theta2 * rho * pr.lambda3)


def _relay_s1_exponent(cfg, rt1):
    return rt1 / (cfg.profile.lambda2 * cfg.rho * _s1_margin(cfg, rt1))


def op_s2_given_relay_decodes(cfg, rt2):
    """Outage of s2 conditioned on the relay having decoded s1.

    Takes the SINR threshold ``rt2`` directly.
    """
    return 1.0 - _s2_prefactor(cfg, rt2) * math.exp(-_s2_exponent(cfg, rt2))


def s2_success_factors(cfg, targets):
    """``(P[end-to-end s2 SINR > R2], P[relay decodes s1])``, whose product
    is the s2 success probability."""
    rt1, rt2 = targets.rt1, targets.rt2
    e2e = _s2_prefactor(cfg, rt2) * math.exp(-_s2_exponent(cfg, rt2))
    return e2e, math.exp(-_relay_s1_exponent(cfg, rt1))


def op_s2(cfg, targets):
    """Outage of s2, the product of the end-to-end s2 success probability and
    the probability that the relay decodes s1.

    Reduces to the perfect-SIC expression when ``kappa1 == 0``.
    """
    rt1, rt2 = targets.rt1, targets.rt2
    expo = _s2_exponent(cfg, rt2) + _relay_s1_exponent(cfg, rt1)
    return 1.0 - _s2_prefactor(cfg, rt2) * math.exp(-expo)


def _s3_prefactor(cfg, rt3):
    a, pr = cfg.alloc, cfg.profile
    j = a.theta3 * pr.lambda1
    return j / (j + a.theta2 * cfg.sic.kappa2 * pr.lambda3 * rt3)


def op_s3_at(cfg, rt3):
    """s3 outage at SINR threshold ``rt3``."""
    x = rt3 / (cfg.alloc.theta3 * cfg.rho * cfg.profile.lambda1)
    if cfg.sic.kappa2 == 0.0:
        return -math.expm1(-x)
    return 1.0 - _s3_prefactor(cfg, rt3) * math.exp(-x)


def op_s3(cfg, targets):
    return op_s3_at(cfg, targets.rt3)


def op_s3_perfect_high_snr(cfg, targets):
    return targets.rt3 / (cfg.alloc.theta3 * cfg.rho * cfg.profile.lambda1)


def op_floor_s2(cfg, targets):
    """Limit of :func:`op_s2` as rho grows without bound."""
    return 1.0 - _s2_prefactor(cfg, targets.rt2)


def op_floor_s3(cfg, targets):
    """Limit of :func:`op_s3`; zero under perfect SIC at D."""
    return 1.0 - _s3_prefactor(cfg, targets.rt3)


def diversity_fit(op_curve):
    """Least-squares slope of ``-log10(op)`` against ``log10(rho)``.

    ``op_curve`` is a sequence of ``(rho_linear, op)`` pairs with strictly
    increasing ``rho``.
    """
    pts = np.asarray(op_curve, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ValueError("need at least 3 (rho, op) points")
    rho, op = pts[:, 0], pts[:, 1]
    if np.any(np.diff(rho) <= 0) or np.any(rho <= 0):
        raise ValueError("rho must be positive and strictly increasing")
    if np.any(op <= 0):
        raise ValueError("outage probabilities must be positive to take logs")
    slope, _ = np.polyfit(np.log10(rho), -np.log10(op), 1)
    return float(slope)
