"""Energy efficiency of a two-phase transmission."""

from dataclasses import dataclass


@dataclass(frozen=True)
class EnergyBudget:
    """Source and relay transmit powers (W) and the duration (s) of one
    complete two-phase transmission."""

    ps: float = 10.0
    pr: float = 10.0
    t: float = 1.0

    def __post_init__(self):
        for name in ("ps", "pr", "t"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def ee_from_rate(rate_sum, budget=EnergyBudget()):
    """Bits/s/Hz per joule for a sum rate (ergodic or outage).

    Each node transmits for half of ``t``, hence ``2 C / (t (ps + pr))``.
    """
    if rate_sum < 0:
        raise ValueError("rate_sum must be nonnegative")
    return 2.0 * rate_sum / (budget.t * (budget.ps + budget.pr))
