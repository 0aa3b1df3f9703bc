"""
Outage sum capacity
===================

The rate each symbol can carry while tolerating outage probability u.
s2 and the imperfect s3 use a high-SNR linearization; ``exact=True``
inverts the full expressions instead.
"""

from ducnoma import SystemConfig, OutageSpec, osc
from ducnoma.outage import op_s3_at
from ducnoma.outage_capacity import threshold_s3

for d in (35, 45):
    cfg = SystemConfig.from_db(d)
    print(f"{d} dB, perfect cancellation")
    for u in (0.02, 0.1, 0.2, 0.3):
        b = osc(cfg, OutageSpec.uniform(u))
        print(f"  u={u:4.2f}  osc={b.osc:.4f}  ({b.ct1:.3f}, {b.ct2:.3f}, {b.ct3:.3f})")

# linearized against exact inversion under residual interference
cfg = SystemConfig.from_db(40).with_sic(0.04**2)
for u in (0.01, 0.1, 0.3):
    lin = osc(cfg, OutageSpec.uniform(u)).osc
    ex = osc(cfg, OutageSpec.uniform(u), exact=True).osc
    back = op_s3_at(cfg, threshold_s3(cfg, u))
    print(f"u={u:4.2f}  linearized {lin:.4f}  exact {ex:.4f}  s3 outage at linearized rate {back:.4f}")
