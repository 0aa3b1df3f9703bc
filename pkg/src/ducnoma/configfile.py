"""Plain-text ``key = value`` run configuration.

Recognised keys (all optional, defaults in brackets)::

    snr_db [30]  phi1 [0.9]  theta2 [1]  theta3 [0.7]
    kappa1 [0]   kappa2 [0]  nu [2]      d_sd [10]   d_sr_fraction [0.5]
    trials [1000000]  seed [0]
    target_rate [0.5]  upsilon [0.1]  ps [10]  pr [10]  t [1]

``phi2`` is always ``1 - phi1``.  Blank lines and ``#`` comments are ignored.
"""

from dataclasses import dataclass, field

from .channel import ChannelProfile, PowerAllocation, SicModel, SystemConfig
from .energy import EnergyBudget

DEFAULTS = {
    "snr_db": 30.0, "phi1": 0.9, "theta2": 1.0, "theta3": 0.7,
    "kappa1": 0.0, "kappa2": 0.0, "nu": 2.0, "d_sd": 10.0, "d_sr_fraction": 0.5,
    "trials": 10**6, "seed": 0,
    "target_rate": 0.5, "upsilon": 0.1, "ps": 10.0, "pr": 10.0, "t": 1.0,
}
_INT_KEYS = {"trials", "seed"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: dict = field(default_factory=lambda: dict(DEFAULTS))

    def __getattr__(self, name):
        try:
            return self.__dict__["params"][name]
        except KeyError:
            raise AttributeError(name) from None

    def system(self, **overrides):
        """Build a :class:`SystemConfig`; overrides use config-file key names
        plus ``d_sr`` (metres) and ``phi2``."""
        p = dict(self.params)
        p.update(overrides)
        phi2 = p.pop("phi2", None)
        if phi2 is None:
            phi2 = 1.0 - p["phi1"]
        d_sr = p.pop("d_sr", None)
        if d_sr is None:
            d_sr = p["d_sr_fraction"] * p["d_sd"]
        return SystemConfig.from_db(
            p["snr_db"],
            alloc=PowerAllocation(1.0 - phi2, phi2, p["theta2"], p["theta3"]),
            profile=ChannelProfile.collinear(p["d_sd"], d_sr, p["nu"]),
            sic=SicModel(p["kappa1"], p["kappa2"]),
        )

    def budget(self):
        return EnergyBudget(self.params["ps"], self.params["pr"], self.params["t"])


def parse_config(text):
    params = dict(DEFAULTS)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key not in DEFAULTS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            params[key] = int(value) if key in _INT_KEYS else float(value)
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    run = RunConfig(params)
    try:
        run.system()
        run.budget()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return run


def load_config(path):
    """Read and validate a config file; ``OSError`` propagates."""
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
