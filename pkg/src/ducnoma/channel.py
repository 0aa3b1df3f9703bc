"""System parameters, path-loss geometry and Rayleigh fading samples."""

from dataclasses import dataclass, field
import math

import numpy as np


def db_to_linear(snr_db):
    return 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)


def linear_to_db(rho):
    return 10.0 * np.log10(rho)


def mean_gain(d, nu):
    """Mean channel gain ``d**-nu`` of a link of length ``d`` metres."""
    if not d > 0:
        raise ValueError(f"distance must be positive, got {d!r}")
    return float(d) ** (-float(nu))


def collinear_geometry(d_sd, d_sr):
    """Place the relay on the S-D segment; return ``(d_sr, d_rd)``."""
    if not 0.0 < d_sr < d_sd:
        raise ValueError(f"relay distance must lie in (0, {d_sd}), got {d_sr!r}")
    return float(d_sr), float(d_sd) - float(d_sr)


@dataclass(frozen=True)
class PowerAllocation:
    """Power split of the superposed phase-1 signal and the phase-2 powers.

    ``phi1``/``phi2`` are the source fractions on s1/s2 during phase 1;
    ``theta2`` scales the relay's s2 and ``theta3`` the source's s3 in phase 2.
    """

    phi1: float = 0.9
    phi2: float = 0.1
    theta2: float = 1.0
    theta3: float = 0.7

    def __post_init__(self):
        if not (self.phi1 > self.phi2 > 0.0):
            raise ValueError("need phi1 > phi2 > 0")
        if not math.isclose(self.phi1 + self.phi2, 1.0, rel_tol=0.0, abs_tol=1e-12):
            raise ValueError("phi1 + phi2 must equal 1")
        if not (1.0 >= self.theta2 > self.theta3 > 0.0):
            raise ValueError("need 1 >= theta2 > theta3 > 0")

    @classmethod
    def from_phi2(cls, phi2, theta2=1.0, theta3=0.7):
        return cls(phi1=1.0 - phi2, phi2=phi2, theta2=theta2, theta3=theta3)


@dataclass(frozen=True)
class ChannelProfile:
    """Link distances and path-loss exponent.

    Index convention: 1 = S->D, 2 = S->R, 3 = R->D.
    """

    d_sd: float = 10.0
    d_sr: float = 5.0
    d_rd: float = 5.0
    nu: float = 2.0

    def __post_init__(self):
        for name in ("d_sd", "d_sr", "d_rd"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not (self.lambda1 < self.lambda2 and self.lambda1 < self.lambda3):
            raise ValueError("the direct link must be the weakest: need lambda1 < lambda2, lambda3")

    @classmethod
    def collinear(cls, d_sd=10.0, d_sr=5.0, nu=2.0):
        d_sr, d_rd = collinear_geometry(d_sd, d_sr)
        return cls(d_sd=d_sd, d_sr=d_sr, d_rd=d_rd, nu=nu)

    @property
    def lambda1(self):
        return mean_gain(self.d_sd, self.nu)

    @property
    def lambda2(self):
        return mean_gain(self.d_sr, self.nu)

    @property
    def lambda3(self):
        return mean_gain(self.d_rd, self.nu)


@dataclass(frozen=True)
class SicModel:
    """Residual-interference levels after SIC at the relay and destination."""

    kappa1: float = 0.0
    kappa2: float = 0.0

    def __post_init__(self):
        for name in ("kappa1", "kappa2"):
            k = getattr(self, name)
            if not 0.0 <= k <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {k!r}")

    @property
    def perfect(self):
        return self.kappa1 == 0.0 and self.kappa2 == 0.0


@dataclass(frozen=True)
class SystemConfig:
    """Everything that defines one operating point.

    One SNR ``rho`` is used for both the source and the relay (equal
    transmit powers).
    """

    rho: float
    alloc: PowerAllocation = field(default_factory=PowerAllocation)
    profile: ChannelProfile = field(default_factory=ChannelProfile)
    sic: SicModel = field(default_factory=SicModel)

    def __post_init__(self):
        if not (self.rho > 0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be positive and finite, got {self.rho!r}")

    @classmethod
    def from_db(cls, snr_db, **kwargs):
        return cls(rho=float(db_to_linear(snr_db)), **kwargs)

    @property
    def snr_db(self):
        return float(linear_to_db(self.rho))

    def replace(self, **changes):
        """Copy with some top-level fields (or ``snr_db``) changed."""
        if "snr_db" in changes:
            changes["rho"] = float(db_to_linear(changes.pop("snr_db")))
        fields = dict(rho=self.rho, alloc=self.alloc, profile=self.profile, sic=self.sic)
        fields.update(changes)
        return SystemConfig(**fields)

    def with_sic(self, kappa1, kappa2=None):
        return self.replace(sic=SicModel(kappa1, kappa1 if kappa2 is None else kappa2))


@dataclass(frozen=True)
class FadingSample:
    """Squared channel gains for a batch of two-phase transmissions.

    ``g1, g2, g3`` are |h1|^2, |h2|^2, |h3|^2; ``gbar2`` and ``gbar3`` are the
    residual-interference gains left after SIC at R and at D.
    """

    g1: np.ndarray
    g2: np.ndarray
    g3: np.ndarray
    gbar2: np.ndarray
    gbar3: np.ndarray

    def __len__(self):
        return np.size(self.g1)


def sample_fading(cfg, rng, size=None):
    """Draw independent exponential gains for ``size`` transmissions.

    Five standard-exponential variates are always drawn per transmission
    (in the order g1, g2, g3, gbar2, gbar3) so the stream consumption does
    not depend on whether SIC is perfect.
    """
    p = cfg.profile
    k = cfg.sic
    e = rng.standard_exponential(size=(5,) if size is None else (5, size))
    return FadingSample(
        g1=p.lambda1 * e[0],
        g2=p.lambda2 * e[1],
        g3=p.lambda3 * e[2],
        gbar2=(k.kappa1 * p.lambda2) * e[3],
        gbar3=(k.kappa2 * p.lambda3) * e[4],
    )
