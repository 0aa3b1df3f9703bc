"""Protocol-level Monte Carlo estimation of every metric.

Randomness is counter-based: trial ``n`` belongs to block ``n // BLOCK``
and each block draws from its own Philox stream keyed on ``(seed, tag)``
with the block index in the counter.  Results are therefore bit-identical
for any number of worker threads.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import enum
import math

import numpy as np

from . import link
from .channel import sample_fading

BLOCK = 1 << 16
MIN_TRIALS = 1000

# stream tags keep independent estimators on disjoint key spaces
_RATES, _OUTAGE, _FACTOR_RELAY, _FACTOR_S1, _CDF = range(5)


class Scheme(str, enum.Enum):
    DU_CNOMA = "du_cnoma"
    CRS_NOMA = "crs_noma"
    CRS_NOMA_ND = "crs_noma_nd"


@dataclass(frozen=True)
class MetricEstimate:
    mean: float
    std_error: float
    trials: int

    def z_score(self, reference):
        if self.std_error == 0.0:
            return 0.0 if reference == self.mean else math.copysign(math.inf, self.mean - reference)
        return (self.mean - reference) / self.std_error

    def scaled(self, factor):
        return MetricEstimate(self.mean * factor, self.std_error * abs(factor), self.trials)


def block_rng(seed, tag, block):
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, tag], dtype=np.uint64)
    counter = np.array([0, block, 0, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def _blocks(trials):
    full, rest = divmod(trials, BLOCK)
    sizes = [BLOCK] * full
    if rest:
        sizes.append(rest)
    return sizes


def _moments(x):
    x = np.asarray(x, dtype=float)
    mean = x.mean()
    return len(x), mean, float(np.sum((x - mean) ** 2))


def _combine(parts):
    # ordered pairwise merge of (n, mean, M2)
    n, mean, m2 = parts[0]
    for nb, mb, m2b in parts[1:]:
        tot = n + nb
        delta = mb - mean
        mean = mean + delta * nb / tot
        m2 = m2 + m2b + delta * delta * n * nb / tot
        n = tot
    return n, mean, m2


def _run(statistic, cfg, trials, seed, tag, workers):
    """Map ``statistic(sample) -> dict of arrays`` over blocks; reduce per key."""
    if trials < MIN_TRIALS:
        raise ValueError(f"need at least {MIN_TRIALS} trials, got {trials}")

    def one(args):
        idx, size = args
        sample = sample_fading(cfg, block_rng(seed, tag, idx), size)
        return {k: _moments(v) for k, v in statistic(sample).items()}

    jobs = list(enumerate(_blocks(trials)))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, jobs))
    else:
        results = [one(j) for j in jobs]

    out = {}
    for key in results[0]:
        n, mean, m2 = _combine([r[key] for r in results])
        sd = math.sqrt(m2 / (n - 1))
        out[key] = MetricEstimate(float(mean), sd / math.sqrt(n), n)
    return out


def mc_rates(cfg, scheme=Scheme.DU_CNOMA, trials=10**6, seed=0, workers=1):
    """Mean per-symbol and sum rates, keyed ``c1``, ``c2``, (``c3``), ``c_sum``.

    Baselines are simulated with perfect SIC whatever ``cfg.sic`` says.
    """
    scheme = Scheme(scheme)
    if scheme is not Scheme.DU_CNOMA:
        cfg = cfg.with_sic(0.0)

    def statistic(s):
        if scheme is Scheme.DU_CNOMA:
            r = link.instant_rates(s, cfg)
            return {"c1": r.c1, "c2": r.c2, "c3": r.c3, "c_sum": r.c_sum}
        c1, c2 = link.crs_noma_rates(s, cfg, combining=scheme is Scheme.CRS_NOMA_ND)
        return {"c1": c1, "c2": c2, "c_sum": c1 + c2}

    return _run(statistic, cfg, trials, seed, _RATES, workers)


def mc_esc(cfg, scheme=Scheme.DU_CNOMA, trials=10**6, seed=0, workers=1):
    return mc_rates(cfg, scheme, trials, seed, workers)["c_sum"]


def _indicator(cond):
    return cond.astype(float)


def mc_op(cfg, targets, symbol, event_mode="factorized", trials=10**6, seed=0, workers=1):
    """Fraction of transmissions in outage for ``symbol`` in {s1, s2, s3}.

    For s2, ``event_mode="joint"`` declares outage on one realization when
    the relay fails on s1 or the end-to-end s2 SINR is too low.
    ``"factorized"`` estimates the two success probabilities from
    independent sample sets and multiplies them, mirroring the closed form.
    s1 and s3 ignore ``event_mode``.
    """
    rt1, rt2, rt3 = targets.rt1, targets.rt2, targets.rt3
    if cfg.alloc.phi1 - cfg.alloc.phi2 * rt1 <= 0 and symbol in ("s1", "s2"):
        raise ValueError("target rate unreachable: OP = 1")

    if symbol == "s1":
        stat = lambda s: {"out": _indicator(link.sinr_dest_s1(s, cfg) < rt1)}
        return _run(stat, cfg, trials, seed, _OUTAGE, workers)["out"]
    if symbol == "s3":
        stat = lambda s: {"out": _indicator(link.sinr_dest_s3(s, cfg) < rt3)}
        return _run(stat, cfg, trials, seed, _OUTAGE, workers)["out"]
    if symbol != "s2":
        raise ValueError(f"unknown symbol {symbol!r}")

    def z(s):
        return np.minimum(link.sinr_relay_s2(s, cfg), link.sinr_dest_s2(s, cfg))

    if event_mode == "joint":
        stat = lambda s: {"out": _indicator((link.sinr_relay_s1(s, cfg) <= rt1) | (z(s) <= rt2))}
        return _run(stat, cfg, trials, seed, _OUTAGE, workers)["out"]
    if event_mode != "factorized":
        raise ValueError(f"unknown event mode {event_mode!r}")

    a = _run(lambda s: {"ok": _indicator(z(s) > rt2)}, cfg, trials, seed, _FACTOR_RELAY, workers)["ok"]
    b = _run(lambda s: {"ok": _indicator(link.sinr_relay_s1(s, cfg) > rt1)},
             cfg, trials, seed, _FACTOR_S1, workers)["ok"]
    # delta method for the product of two independent means
    var = (b.mean * a.std_error) ** 2 + (a.mean * b.std_error) ** 2 + (a.std_error * b.std_error) ** 2
    return MetricEstimate(1.0 - a.mean * b.mean, math.sqrt(var), a.trials)


def outage_null_stderr(cfg, targets, symbol, trials):
    """Standard error of :func:`mc_op` if the closed-form probability holds.

    Unlike the sample standard error this stays positive when every trial
    lands on the same side of the threshold.
    """
    from . import outage

    if symbol == "s2":
        a, b = outage.s2_success_factors(cfg, targets)
        var = b * b * a * (1 - a) + a * a * b * (1 - b)
    else:
        p = getattr(outage, "op_" + symbol)(cfg, targets)
        var = p * (1 - p)
    return math.sqrt(var / trials)


SINR_VARIABLES = {
    "w": lambda s, cfg: np.minimum(s.g1, s.g2),
    "u": link.sinr_relay_s2,
    "v": link.sinr_dest_s2,
    "z": lambda s, cfg: np.minimum(link.sinr_relay_s2(s, cfg), link.sinr_dest_s2(s, cfg)),
    "y": link.sinr_dest_s3,
}
_ALIASES = {"s1": "w", "s2": "z", "s3": "y"}


def mc_rate_cdf(cfg, variable, trials=10**6, seed=0):
    """Sorted samples of an SINR variable and their empirical CDF levels.

    ``variable`` is one of w, u, v, z, y (or s1/s2/s3 for w/z/y).
    """
    if trials < 10**4:
        raise ValueError("need at least 10^4 trials for an empirical CDF")
    fn = SINR_VARIABLES[_ALIASES.get(variable, variable)]
    parts = [fn(sample_fading(cfg, block_rng(seed, _CDF, i), n), cfg)
             for i, n in enumerate(_blocks(trials))]
    x = np.sort(np.concatenate(parts))
    return x, np.arange(1, len(x) + 1) / len(x)


def sup_distance(samples, cdf):
    """Kolmogorov-Smirnov distance between sorted ``samples`` and ``cdf``."""
    x = np.asarray(samples)
    n = len(x)
    f = cdf(x)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))
