"""
Outage probability and diversity order
======================================

Outage falls as 1/rho with perfect cancellation.  A residual interference
level puts a floor under s2 and s3.
"""

import numpy as np

from ducnoma import SystemConfig, RateTargets, op_s1, op_s2, op_s3, diversity_fit
from ducnoma.outage import op_floor_s2, op_floor_s3

targets = RateTargets.uniform(0.5)
kappa = 0.04**2

print("snr_db    op_s1      op_s2      op_s3    op_s2(k)   op_s3(k)")
for d in range(0, 61, 10):
    p = SystemConfig.from_db(d)
    q = p.with_sic(kappa)
    row = [op_s1(p, targets), op_s2(p, targets), op_s3(p, targets),
           op_s2(q, targets), op_s3(q, targets)]
    print(f"{d:6d}  " + "  ".join(f"{v:9.3e}" for v in row))

# slope of log OP against log rho
def curve(f, k, lo, hi):
    return [(10 ** (d / 10), f(SystemConfig.from_db(d).with_sic(k), targets))
            for d in np.arange(lo, hi + 1, 1.0)]

print("\nfitted slopes")
print("  s1, 30-40 dB:", round(diversity_fit(curve(op_s1, 0.0, 30, 40)), 3))
print("  s3, 30-40 dB:", round(diversity_fit(curve(op_s3, 0.0, 30, 40)), 3))
print("  s2 with residual, 40-50 dB:", round(diversity_fit(curve(op_s2, kappa, 40, 50)), 3))

q = SystemConfig.from_db(30).with_sic(kappa)
print(f"\nfloors: s2 {op_floor_s2(q, targets):.4e}  s3 {op_floor_s3(q, targets):.4e}")
