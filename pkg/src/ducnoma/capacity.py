"""Closed-form ergodic capacities over independent Rayleigh fading.

Writing ``E(x) = exp(x) * Ei(-x)``, every per-symbol capacity reduces to a
divided difference of ``E``:

* s1:  (E(a / phi2) - E(a)) / (2 ln 2)
* s2, perfect SIC:    (log2 e / 2) * g q  * E[q, gq]
* s2, imperfect SIC: -(log2 e / 2) * p g q^2 * E[q, pq, gq]
* s3, perfect SIC:   -(log2 e / 2) * E(r)
* s3, imperfect SIC:  (log2 e / 2) * c r  * E[r, cr]

where ``E[.]`` are divided differences.  The partial-fraction forms are
singular at ``p = 1``, ``g = 1``, ``g = p`` and ``c = 1``; the divided
differences are not, and fall back to derivative limits there.
"""

from dataclasses import dataclass
import math

import numpy as np

from .special import exp_ei, exp_ei_dd1, exp_ei_dd2

HALF_LOG2E = 0.5 / math.log(2.0)


def relay_residual_ratio(cfg):
    """``p = phi2 / (phi1 * kappa1)``; infinite under perfect SIC at R."""
    a = cfg.alloc
    if cfg.sic.kappa1 == 0.0:
        return math.inf
    return a.phi2 / (a.phi1 * cfg.sic.kappa1)


def uplink_ratio(cfg):
    """``g = theta2 * lambda3 / (theta3 * lambda1)``."""
    a, pr = cfg.alloc, cfg.profile
    return a.theta2 * pr.lambda3 / (a.theta3 * pr.lambda1)


def s2_exponent_rate(cfg):
    """``q = 1/(phi2 rho lambda2) + 1/(theta2 rho lambda3)``."""
    a, pr, rho = cfg.alloc, cfg.profile, cfg.rho
    return 1.0 / (a.phi2 * rho * pr.lambda2) + 1.0 / (a.theta2 * rho * pr.lambda3)


def s3_exponent_rate(cfg):
    """``r = 1 / (theta3 rho lambda1)``."""
    return 1.0 / (cfg.alloc.theta3 * cfg.rho * cfg.profile.lambda1)


def dest_residual_ratio(cfg):
    """``c = theta3 lambda1 / (theta2 kappa2 lambda3)``; infinite if kappa2 = 0."""
    a, pr = cfg.alloc, cfg.profile
    if cfg.sic.kappa2 == 0.0:
        return math.inf
    return a.theta3 * pr.lambda1 / (a.theta2 * cfg.sic.kappa2 * pr.lambda3)


def ec_s1(cfg):
    """Ergodic capacity of s1 (bits/s/Hz); unaffected by SIC quality."""
    pr = cfg.profile
    a = (1.0 / pr.lambda1 + 1.0 / pr.lambda2) / cfg.rho
    return HALF_LOG2E * (exp_ei(a / cfg.alloc.phi2) - exp_ei(a))


def ec_s2_perfect(cfg):
    g, q = uplink_ratio(cfg), s2_exponent_rate(cfg)
    return HALF_LOG2E * g * q * exp_ei_dd1(q, g * q)


def ec_s2_imperfect(cfg):
    if cfg.sic.kappa1 <= 0.0:
        raise ValueError("imperfect-SIC form needs kappa1 > 0")
    p, g, q = relay_residual_ratio(cfg), uplink_ratio(cfg), s2_exponent_rate(cfg)
    return -HALF_LOG2E * p * g * q * q * exp_ei_dd2(q, p * q, g * q)


def ec_s3_perfect(cfg):
    return -HALF_LOG2E * exp_ei(s3_exponent_rate(cfg))


def ec_s3_imperfect(cfg):
    if cfg.sic.kappa2 <= 0.0:
        raise ValueError("imperfect-SIC form needs kappa2 > 0")
    c, r = dest_residual_ratio(cfg), s3_exponent_rate(cfg)
    return HALF_LOG2E * c * r * exp_ei_dd1(r, c * r)


def ec_s2(cfg):
    return ec_s2_perfect(cfg) if cfg.sic.kappa1 == 0.0 else ec_s2_imperfect(cfg)


def ec_s3(cfg):
    return ec_s3_perfect(cfg) if cfg.sic.kappa2 == 0.0 else ec_s3_imperfect(cfg)


@dataclass(frozen=True)
class EcBreakdown:
    ec1: float
    ec2: float
    ec3: float
    sic_mode: str

    @property
    def esc(self):
        return self.ec1 + self.ec2 + self.ec3


def esc(cfg):
    """Ergodic sum capacity, each symbol in the SIC mode its kappa implies."""
    mode = "perfect" if cfg.sic.perfect else "imperfect"
    return EcBreakdown(ec_s1(cfg), ec_s2(cfg), ec_s3(cfg), mode)


# CDFs of the SINR variables behind each capacity

def cdf_w(w, cfg):
    """CDF of ``W = min(|h1|^2, |h2|^2)``."""
    pr = cfg.profile
    w = np.asarray(w, dtype=float)
    return np.where(w > 0, -np.expm1(-w * (1.0 / pr.lambda1 + 1.0 / pr.lambda2)), 0.0)


def _rational_tail(x, k):
    # k / (k + x), equal to 1 when k is infinite
    if math.isinf(k):
        return np.ones_like(x)
    return k / (k + x)


def cdf_u(u, cfg):
    """CDF of the relay's post-SIC SINR for s2."""
    u = np.asarray(u, dtype=float)
    scale = cfg.alloc.phi2 * cfg.rho * cfg.profile.lambda2
    surv = _rational_tail(u, relay_residual_ratio(cfg)) * np.exp(-u / scale)
    return np.where(u > 0, 1.0 - surv, 0.0)


def cdf_v(v, cfg):
    """CDF of the destination's phase-2 SINR for s2."""
    v = np.asarray(v, dtype=float)
    scale = cfg.alloc.theta2 * cfg.rho * cfg.profile.lambda3
    surv = _rational_tail(v, uplink_ratio(cfg)) * np.exp(-v / scale)
    return np.where(v > 0, 1.0 - surv, 0.0)


def cdf_z(z, cfg):
    """CDF of ``Z = min(U, V)``, the end-to-end SINR of s2."""
    z = np.asarray(z, dtype=float)
    surv = (_rational_tail(z, relay_residual_ratio(cfg)) * _rational_tail(z, uplink_ratio(cfg))
            * np.exp(-s2_exponent_rate(cfg) * z))
    return np.where(z > 0, 1.0 - surv, 0.0)


def cdf_y(y, cfg):
    """CDF of the post-SIC SINR of s3 at D."""
    y = np.asarray(y, dtype=float)
    surv = _rational_tail(y, dest_residual_ratio(cfg)) * np.exp(-s3_exponent_rate(cfg) * y)
    return np.where(y > 0, 1.0 - surv, 0.0)
