"""
Energy efficiency
=================

Bits delivered per joule for the ergodic and outage sum rates, with the
source and relay both transmitting at 10 W for a unit time slot.
"""

from ducnoma import SystemConfig, OutageSpec, esc, osc, EnergyBudget, ee_from_rate

budget = EnergyBudget(ps=10, pr=10, t=1)
print("snr_db  ee(esc)  ee(osc, u=0.1)")
for d in range(0, 51, 10):
    cfg = SystemConfig.from_db(d)
    e1 = ee_from_rate(esc(cfg).esc, budget)
    e2 = ee_from_rate(osc(cfg, OutageSpec.uniform(0.1)).osc, budget)
    print(f"{d:6d}  {e1:7.4f}  {e2:7.4f}")

# twice the power for the same rate halves the efficiency
print(ee_from_rate(5.0, budget), ee_from_rate(5.0, EnergyBudget(20, 20, 1)))
