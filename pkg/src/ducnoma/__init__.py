"""Analytic evaluator and Monte Carlo simulator for dual-hop decode-and-forward
relaying that uses downlink NOMA in the first phase and uplink NOMA in the
second (three symbols delivered per two slots)."""

from .capacity import EcBreakdown, esc, ec_s1, ec_s2_imperfect, ec_s2_perfect, ec_s3_imperfect, ec_s3_perfect
from .channel import (ChannelProfile, FadingSample, PowerAllocation, SicModel, SystemConfig,
                      collinear_geometry, db_to_linear, mean_gain, sample_fading)
from .energy import EnergyBudget, ee_from_rate
from .link import InstantRates, instant_rates
from .montecarlo import MetricEstimate, Scheme, mc_esc, mc_op, mc_rate_cdf, mc_rates
from .outage import RateTargets, diversity_fit, op_floor_s2, op_floor_s3, op_s1, op_s2, op_s3
from .outage_capacity import OscBreakdown, OutageSpec, osc
from .special import ei_neg, exp_ei

__version__ = "0.1.0"
