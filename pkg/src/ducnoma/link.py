"""Instantaneous SINRs and achievable rates of the two-phase protocol.

All functions broadcast over the arrays of a :class:`~ducnoma.channel.FadingSample`.
Rates follow the weakest-link rule of decode-and-forward and carry the 1/2
pre-log of half-duplex two-slot operation.
"""

from dataclasses import dataclass

import numpy as np

_HALF_LOG2E = 0.5 / np.log(2.0)


def half_log2_1p(x):
    """``0.5 * log2(1 + x)``, accurate for small ``x``."""
    return _HALF_LOG2E * np.log1p(x)


def sinr_relay_s1(s, cfg):
    """SINR of s1 at the relay, s2 treated as noise (phase 1)."""
    a, rho = cfg.alloc, cfg.rho
    return a.phi1 * rho * s.g2 / (a.phi2 * rho * s.g2 + 1.0)


def sinr_relay_s2(s, cfg):
    """SINR of s2 at the relay after cancelling s1 (residual ``gbar2``)."""
    a, rho = cfg.alloc, cfg.rho
    return a.phi2 * rho * s.g2 / (a.phi1 * rho * s.gbar2 + 1.0)


def sinr_dest_s1(s, cfg):
    """SINR of s1 at the destination during phase 1."""
    a, rho = cfg.alloc, cfg.rho
    return a.phi1 * rho * s.g1 / (a.phi2 * rho * s.g1 + 1.0)


def sinr_dest_s2(s, cfg):
    """SINR of the relayed s2 at D, with the source's s3 as interference."""
    a, rho = cfg.alloc, cfg.rho
    return a.theta2 * rho * s.g3 / (a.theta3 * rho * s.g1 + 1.0)


def sinr_dest_s3(s, cfg):
    """SINR of s3 at D after cancelling s2 (residual ``gbar3``)."""
    a, rho = cfg.alloc, cfg.rho
    return a.theta3 * rho * s.g1 / (a.theta2 * rho * s.gbar3 + 1.0)


@dataclass(frozen=True)
class InstantRates:
    c1: np.ndarray
    c2: np.ndarray
    c3: np.ndarray
    c_sum: np.ndarray


def instant_rates(s, cfg):
    c1 = half_log2_1p(np.minimum(sinr_relay_s1(s, cfg), sinr_dest_s1(s, cfg)))
    c2 = half_log2_1p(np.minimum(sinr_relay_s2(s, cfg), sinr_dest_s2(s, cfg)))
    c3 = half_log2_1p(sinr_dest_s3(s, cfg))
    return InstantRates(c1=c1, c2=c2, c3=c3, c_sum=c1 + c2 + c3)


def rate_s1_difference_form(s, cfg):
    """Perfect-SIC s1 rate written as a difference of two log terms.

    Equivalent to ``instant_rates(...).c1``; kept as an independent check.
    """
    w = np.minimum(s.g1, s.g2)
    rho = cfg.rho
    return _HALF_LOG2E * (np.log1p(rho * w) - np.log1p(rho * cfg.alloc.phi2 * w))


def crs_noma_rates(s, cfg, combining=False):
    """Per-symbol rates of the conventional two-symbol relaying baselines.

    Phase 2 carries only the relay retransmitting s2 at full power.  With
    ``combining=True`` the destination adds the post-SIC direct-link SNR of
    s2 to the relayed SNR (maximal-ratio combining).
    """
    a, rho = cfg.alloc, cfg.rho
    c1 = half_log2_1p(np.minimum(sinr_relay_s1(s, cfg), sinr_dest_s1(s, cfg)))
    dest = rho * s.g3
    if combining:
        dest = dest + a.phi2 * rho * s.g1
    c2 = half_log2_1p(np.minimum(a.phi2 * rho * s.g2, dest))
    return c1, c2
