"""Outage capacities: the largest target rate meeting a given outage level.

The s1 and perfect-SIC s3 inversions are exact.  The s2 (both SIC modes)
and imperfect-SIC s3 inversions use the first-order expansion
``exp(-x) ~ 1 - x`` of the exponential factor, which is accurate at high
SNR; pass ``exact=True`` to invert the exact outage expression numerically
instead.  The s2 outage level is understood as conditioned on the relay
decoding s1, so the s1 -> relay factor is left out of its inversion.
"""

from dataclasses import dataclass
import math
import sys

from scipy.optimize import brentq

from . import outage
from .link import half_log2_1p

RATE_CEILING = 20.0
INVERSION_TOL = 1e-10


@dataclass(frozen=True)
class OutageSpec:
    upsilon1: float = 0.1
    upsilon2: float = 0.1
    upsilon3: float = 0.1

    def __post_init__(self):
        for name in ("upsilon1", "upsilon2", "upsilon3"):
            _check_level(getattr(self, name))

    @classmethod
    def uniform(cls, upsilon):
        return cls(upsilon, upsilon, upsilon)


def _check_level(upsilon):
    if not 0.0 < upsilon < 1.0:
        raise ValueError(f"outage level must lie in (0, 1), got {upsilon!r}")
    return float(upsilon)


def _rate(threshold_sinr):
    return float(half_log2_1p(threshold_sinr))


def _invert(op_of_threshold, upsilon, r_max):
    """Solve ``op(R) = upsilon`` for the SINR threshold on ``[0, r_max]``."""
    f = lambda r: op_of_threshold(r) - upsilon
    if f(r_max) < 0:
        return r_max
    return brentq(f, 0.0, r_max, xtol=INVERSION_TOL, rtol=4 * sys.float_info.epsilon, maxiter=500)


def _gh_ij(cfg):
    a, pr = cfg.alloc, cfg.profile
    g = a.phi2 * pr.lambda2
    h = a.theta2 * pr.lambda3
    i = a.phi1 * cfg.sic.kappa1 * pr.lambda2
    j = a.theta3 * pr.lambda1
    return g, h, i, j


def threshold_s1(cfg, upsilon1):
    upsilon1 = _check_level(upsilon1)
    a, rho, lam1 = cfg.alloc, cfg.rho, cfg.profile.lambda1
    ln = math.log1p(-upsilon1)
    return lam1 * a.phi1 * rho * ln / (lam1 * a.phi2 * rho * ln - 1.0)


def oc_s1(cfg, upsilon1):
    return _rate(threshold_s1(cfg, upsilon1))


def threshold_s2(cfg, upsilon2, exact=False):
    """SINR threshold of s2 for outage level ``upsilon2``.

    Imperfect SIC takes the nonnegative root of ``K R^2 + L R + M = 0``;
    perfect SIC (``K = 0``) is the linear solution.
    """
    upsilon2 = _check_level(upsilon2)
    if exact:
        return _invert(lambda r: outage.op_s2_given_relay_decodes(cfg, r), upsilon2,
                       outage.threshold(RATE_CEILING))
    g, h, i, j = _gh_ij(cfg)
    rho = cfg.rho
    k = i * j * rho * (1.0 - upsilon2)
    l = (g * j + h * i) * (1.0 - upsilon2) * rho + h + g
    m = -g * h * rho * upsilon2
    if k == 0.0:
        return -m / l
    # stable form of (-L + sqrt(L^2 - 4KM)) / (2K) for L > 0
    return 2.0 * (-m) / (l + math.sqrt(l * l - 4.0 * k * m))


def linearized_op_s2(cfg, rt2):
    """Conditional s2 outage with ``exp(-x)`` replaced by ``1 - x``."""
    g, h, i, j = _gh_ij(cfg)
    rho = cfg.rho
    return 1.0 - g * h / ((g + i * rt2) * (h + j * rt2)) * (1.0 - rt2 / (g * rho) - rt2 / (h * rho))


def oc_s2_imperfect(cfg, upsilon2, exact=False):
    if cfg.sic.kappa1 <= 0.0:
        raise ValueError("imperfect-SIC form needs kappa1 > 0")
    return _rate(threshold_s2(cfg, upsilon2, exact))


def oc_s2_perfect(cfg, upsilon2, exact=False):
    if cfg.sic.kappa1 != 0.0:
        raise ValueError("perfect-SIC form needs kappa1 == 0")
    return _rate(threshold_s2(cfg, upsilon2, exact))


def threshold_s3(cfg, upsilon3, exact=False):
    upsilon3 = _check_level(upsilon3)
    a, rho, pr, k2 = cfg.alloc, cfg.rho, cfg.profile, cfg.sic.kappa2
    if k2 == 0.0:
        return -a.theta3 * rho * pr.lambda1 * math.log1p(-upsilon3)
    if exact:
        return _invert(lambda r: outage.op_s3_at(cfg, r), upsilon3,
                       outage.threshold(RATE_CEILING))
    b = a.theta2 * k2 * pr.lambda3 * rho
    return a.theta3 * pr.lambda1 * rho * upsilon3 / (1.0 + b * (1.0 - upsilon3))


def linearized_op_s3(cfg, rt3):
    a, rho, pr = cfg.alloc, cfg.rho, cfg.profile
    j = a.theta3 * pr.lambda1
    b = a.theta2 * cfg.sic.kappa2 * pr.lambda3
    return 1.0 - j / (j + b * rt3) * (1.0 - rt3 / (j * rho))


def oc_s3_imperfect(cfg, upsilon3, exact=False):
    if cfg.sic.kappa2 <= 0.0:
        raise ValueError("imperfect-SIC form needs kappa2 > 0")
    return _rate(threshold_s3(cfg, upsilon3, exact))


def oc_s3_perfect(cfg, upsilon3):
    if cfg.sic.kappa2 != 0.0:
        raise ValueError("perfect-SIC form needs kappa2 == 0")
    return _rate(threshold_s3(cfg, upsilon3))


@dataclass(frozen=True)
class OscBreakdown:
    ct1: float
    ct2: float
    ct3: float
    sic_mode: str
    # the s2 level is read as conditioned on the relay decoding s1
    s2_conditioned_on_relay: bool = True

    @property
    def osc(self):
        return self.ct1 + self.ct2 + self.ct3


def osc(cfg, spec, exact=False):
    """Outage sum capacity for per-symbol outage levels ``spec``."""
    mode = "perfect" if cfg.sic.perfect else "imperfect"
    return OscBreakdown(
        ct1=oc_s1(cfg, spec.upsilon1),
        ct2=_rate(threshold_s2(cfg, spec.upsilon2, exact)),
        ct3=_rate(threshold_s3(cfg, spec.upsilon3, exact)),
        sic_mode=mode,
    )
