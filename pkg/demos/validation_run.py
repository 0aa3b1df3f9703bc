"""
Closed forms against simulation
===============================

Runs the same grid as ``ducnoma validate`` and prints the z-scores.
Counter-based streams make the numbers independent of the worker count.
"""

from ducnoma import SystemConfig, RateTargets, esc, mc_rates, mc_op, op_s2
from ducnoma.montecarlo import outage_null_stderr

targets = RateTargets.uniform(0.5)
n = 10**6

for d in (10, 20, 30, 40):
    for k in (0.0, 0.02**2, 0.04**2):
        cfg = SystemConfig.from_db(d).with_sic(k)
        b = esc(cfg)
        r = mc_rates(cfg, trials=n, seed=3)
        z = [r[key].z_score(ref) for key, ref in (("c1", b.ec1), ("c2", b.ec2), ("c3", b.ec3))]
        fac = mc_op(cfg, targets, "s2", "factorized", n, seed=3)
        joint = mc_op(cfg, targets, "s2", "joint", n, seed=3)
        zs2 = (fac.mean - op_s2(cfg, targets)) / outage_null_stderr(cfg, targets, "s2", n)
        print(f"{d:2d} dB k={k:.4f}  z(ec) " + " ".join(f"{v:+.2f}" for v in z)
              + f"  z(op_s2) {zs2:+.2f}  joint-factorized {joint.mean - fac.mean:+.4f}")
