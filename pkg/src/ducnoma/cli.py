"""Command-line sweeps and analytic-vs-simulation validation reports.

Exit codes: 0 ok, 1 validation ran but a check failed, 2 I/O error,
3 invalid configuration or sweep specification.
"""

import argparse
import csv
from dataclasses import dataclass
import datetime
import math
import sys

from . import capacity, energy, montecarlo, outage, outage_capacity
from .configfile import ConfigError, load_config
from .montecarlo import Scheme

AXES = ("snr_db", "phi2", "d_sr", "upsilon", "kappa")
METRICS = ("esc", "op_s1", "op_s2", "op_s3", "osc", "ee_esc", "ee_osc")
BASELINE_METRICS = {"esc", "ee_esc"}
SWEEP_HEADER = ["axis", "axis_value", "scheme", "sic_mode", "kappa1", "kappa2",
                "metric", "analytic", "mc_mean", "mc_stderr", "note"]
VALIDATE_HEADER = ["check", "snr_db", "sic_mode", "kappa1", "kappa2", "metric", "analytic",
                   "mc_mean", "mc_stderr", "z", "mc_joint", "tolerance", "pass", "note"]
Z_LIMIT = 3.0
EXACT_INVERSE_TOL = 1e-12
LINEARIZED_INVERSE_TOL = 1e-10
LINEARIZATION_GAP_TOL = 0.01

EXIT_OK, EXIT_FAILED, EXIT_IO, EXIT_SPEC = 0, 1, 2, 3


class SpecError(ValueError):
    pass


def fmt(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17e}"
    return str(x)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    step: float
    metrics: tuple
    schemes: tuple = (Scheme.DU_CNOMA,)
    sic_modes: tuple = ("perfect",)
    kappas: tuple = ()

    def __post_init__(self):
        if self.axis not in AXES:
            raise SpecError(f"unknown axis {self.axis!r}")
        if not self.start < self.stop:
            raise SpecError("need start < stop")
        if not self.step > 0:
            raise SpecError("need step > 0")
        if not self.metrics:
            raise SpecError("no metrics requested")
        for m in self.metrics:
            if m not in METRICS:
                raise SpecError(f"unknown metric {m!r}")
        for mode in self.sic_modes:
            if mode not in ("perfect", "imperfect"):
                raise SpecError(f"unknown SIC mode {mode!r}")
        if not self.sic_modes:
            raise SpecError("no SIC modes requested")

    def points(self):
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        return [round(self.start + k * self.step, 12) for k in range(n + 1)]


@dataclass
class SweepRow:
    axis: str
    axis_value: float
    scheme: str
    sic_mode: str
    kappa1: float
    kappa2: float
    metric: str
    analytic: float = None
    mc_mean: float = None
    mc_stderr: float = None
    note: str = ""

    def cells(self):
        return [fmt(getattr(self, k)) for k in SWEEP_HEADER]


def _overrides(axis, value):
    if axis == "kappa":
        return {"kappa1": value, "kappa2": value}
    return {axis: value}


def _sic_cases(run, spec, axis_override):
    if spec.axis == "kappa":
        k = axis_override["kappa1"]
        return [("perfect" if k == 0 else "imperfect", k, k)]
    cases = []
    for mode in spec.sic_modes:
        if mode == "perfect":
            cases.append(("perfect", 0.0, 0.0))
        else:
            cases.extend(("imperfect", k1, k2) for k1, k2 in spec.kappas)
    return cases


def _targets(run):
    return outage.RateTargets.uniform(run.target_rate)


def sweep_rows(run, spec, trials, seed, workers=1):
    """Yield :class:`SweepRow` objects in (point, scheme, mode, metric) order."""
    for value in spec.points():
        over = _overrides(spec.axis, value)
        for scheme in spec.schemes:
            scheme = Scheme(scheme)
            for mode, k1, k2 in _sic_cases(run, spec, over):
                if scheme is not Scheme.DU_CNOMA and mode != "perfect":
                    continue
                params = dict(over, kappa1=k1, kappa2=k2)
                upsilon = params.pop("upsilon", run.upsilon)
                try:
                    cfg = run.system(**params)
                except ValueError as exc:
                    for metric in spec.metrics:
                        yield SweepRow(spec.axis, value, scheme.value, mode, k1, k2, metric,
                                       note=f"invalid point: {exc}")
                    continue
                yield from _point_rows(run, spec, value, scheme, mode, cfg, upsilon,
                                       trials, seed, workers)


def _point_rows(run, spec, value, scheme, mode, cfg, upsilon, trials, seed, workers):
    k1, k2 = cfg.sic.kappa1, cfg.sic.kappa2
    base = dict(axis=spec.axis, axis_value=value, scheme=scheme.value, sic_mode=mode,
                kappa1=k1, kappa2=k2)
    budget = run.budget()
    targets = _targets(run)
    sum_estimate = None

    def mc_sum():
        nonlocal sum_estimate
        if sum_estimate is None and trials > 0:
            sum_estimate = montecarlo.mc_esc(cfg, scheme, trials, seed, workers)
        return sum_estimate

    du = scheme is Scheme.DU_CNOMA
    for metric in spec.metrics:
        if not du and metric not in BASELINE_METRICS:
            continue
        row = SweepRow(metric=metric, **base)
        try:
            if metric in ("esc", "ee_esc"):
                to_metric = (lambda c: c) if metric == "esc" else (lambda c: energy.ee_from_rate(c, budget))
                if du:
                    row.analytic = to_metric(capacity.esc(cfg).esc)
                est = mc_sum()
                if est is not None:
                    row.mc_mean = to_metric(est.mean)
                    row.mc_stderr = to_metric(est.std_error)
            elif metric.startswith("op_"):
                symbol = metric[3:]
                row.analytic = getattr(outage, metric)(cfg, targets)
                if trials > 0:
                    est = montecarlo.mc_op(cfg, targets, symbol, "factorized", trials, seed, workers)
                    row.mc_mean, row.mc_stderr = est.mean, est.std_error
            elif metric in ("osc", "ee_osc"):
                total = outage_capacity.osc(cfg, outage_capacity.OutageSpec.uniform(upsilon)).osc
                row.analytic = total if metric == "osc" else energy.ee_from_rate(total, budget)
        except ValueError as exc:
            row.analytic = row.mc_mean = row.mc_stderr = None
            row.note = str(exc)
        yield row


def _timestamp_line():
    return "# generated " + datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def write_csv(path, header, rows, timestamp=True):
    n = 0
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if timestamp:
            fh.write(_timestamp_line() + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow(row)
            n += 1
    return n


def run_sweep(config_path, spec, out_path, trials=None, seed=None, workers=1, timestamp=True):
    """Write the sweep CSV and return the number of data rows."""
    run = load_config(config_path)
    trials = run.trials if trials is None else trials
    seed = run.seed if seed is None else seed
    rows = (r.cells() for r in sweep_rows(run, spec, trials, seed, workers))
    return write_csv(out_path, SWEEP_HEADER, rows, timestamp)


# validation ---------------------------------------------------------------

def _z_row(check, snr_db, mode, cfg, metric, analytic, est, joint=None, null_se=None):
    if null_se is None:
        z = est.z_score(analytic)
    else:
        z = (est.mean - analytic) / null_se if null_se > 0 else est.z_score(analytic)
    return [check, fmt(float(snr_db)), mode, fmt(cfg.sic.kappa1), fmt(cfg.sic.kappa2), metric,
            fmt(analytic), fmt(est.mean), fmt(est.std_error), fmt(z),
            fmt(joint), fmt(Z_LIMIT), fmt(abs(z) <= Z_LIMIT), ""]


def _gap_row(check, snr_db, mode, cfg, metric, target, achieved, tol, note=""):
    gap = abs(achieved - target)
    return [check, fmt(float(snr_db)), mode, fmt(cfg.sic.kappa1), fmt(cfg.sic.kappa2), metric,
            fmt(target), fmt(achieved), "", "", "", fmt(tol), fmt(gap <= tol), note]


def validation_rows(run, trials, seed, snr_grid=(10, 20, 30, 40), kappas=(0.02**2, 0.04**2),
                    oc_snr_db=40.0, workers=1):
    targets = _targets(run)
    for snr_db in snr_grid:
        cases = [("perfect", 0.0)] + [("imperfect", k) for k in kappas]
        for mode, k in cases:
            cfg = run.system(snr_db=snr_db, kappa1=k, kappa2=k)
            rates = montecarlo.mc_rates(cfg, Scheme.DU_CNOMA, trials, seed, workers)
            ec = capacity.esc(cfg)
            symbols = ("s1", "s2", "s3") if mode == "perfect" else ("s2", "s3")
            for sym in symbols:
                analytic = getattr(ec, "ec" + sym[1])
                yield _z_row("ergodic", snr_db, mode, cfg, "ec_" + sym, analytic, rates["c" + sym[1]])
            for sym in symbols:
                analytic = getattr(outage, "op_" + sym)(cfg, targets)
                est = montecarlo.mc_op(cfg, targets, sym, "factorized", trials, seed, workers)
                joint = None
                if sym == "s2":
                    joint = montecarlo.mc_op(cfg, targets, sym, "joint", trials, seed, workers).mean
                se0 = montecarlo.outage_null_stderr(cfg, targets, sym, trials)
                yield _z_row("outage", snr_db, mode, cfg, "op_" + sym, analytic, est, joint, se0)
    yield from oc_roundtrip_rows(run.system(snr_db=oc_snr_db), oc_snr_db, run.upsilon, kappas)


def oc_roundtrip_rows(cfg, snr_db, upsilon, kappas):
    """Inverse-pair checks of the outage capacities at one SNR."""
    oc = outage_capacity
    p = cfg.with_sic(0.0)
    yield _gap_row("oc_exact", snr_db, "perfect", p, "oc_s1", upsilon,
                   outage.op_s1_at(p, oc.threshold_s1(p, upsilon)), EXACT_INVERSE_TOL)
    yield _gap_row("oc_exact", snr_db, "perfect", p, "oc_s3", upsilon,
                   outage.op_s3_at(p, oc.threshold_s3(p, upsilon)), EXACT_INVERSE_TOL)
    cases = [("perfect", p)] + [("imperfect", cfg.with_sic(k)) for k in kappas]
    for mode, c in cases:
        r2 = oc.threshold_s2(c, upsilon)
        yield _gap_row("oc_linearized", snr_db, mode, c, "oc_s2", upsilon,
                       oc.linearized_op_s2(c, r2), LINEARIZED_INVERSE_TOL)
        yield _gap_row("oc_linearization_gap", snr_db, mode, c, "oc_s2", upsilon,
                       outage.op_s2_given_relay_decodes(c, r2), LINEARIZATION_GAP_TOL,
                       "exact outage conditioned on relay decoding s1")
        if mode == "imperfect":
            r3 = oc.threshold_s3(c, upsilon)
            yield _gap_row("oc_linearized", snr_db, mode, c, "oc_s3", upsilon,
                           oc.linearized_op_s3(c, r3), LINEARIZED_INVERSE_TOL)
            yield _gap_row("oc_linearization_gap", snr_db, mode, c, "oc_s3", upsilon,
                           outage.op_s3_at(c, r3), LINEARIZATION_GAP_TOL)


def run_validation(config_path, out_path, trials=None, seed=None, workers=1, timestamp=True,
                   **grid):
    """Write the validation CSV; return ``(passed, total)``."""
    run = load_config(config_path)
    trials = run.trials if trials is None else trials
    seed = run.seed if seed is None else seed
    rows = list(validation_rows(run, trials, seed, workers=workers, **grid))
    write_csv(out_path, VALIDATE_HEADER, rows, timestamp)
    passed = sum(r[VALIDATE_HEADER.index("pass")] == "true" for r in rows)
    return passed, len(rows)


# argument parsing -----------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SPEC, f"{self.prog}: error: {message}\n")


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _words(text):
    return tuple(x.strip() for x in text.split(",") if x.strip())


def build_parser():
    parser = _Parser(prog="ducnoma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", required=True)
        p.add_argument("--out", required=True)
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--no-timestamp", action="store_true")

    sw = sub.add_parser("sweep", help="sweep one parameter and write a CSV table")
    common(sw)
    sw.add_argument("--axis", required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--step", type=float, required=True)
    sw.add_argument("--metrics", type=_words, default=("esc",))
    sw.add_argument("--schemes", type=_words, default=(Scheme.DU_CNOMA.value,))
    sw.add_argument("--sic", type=_words, default=("perfect",),
                    help="comma list of perfect,imperfect")
    sw.add_argument("--kappas", type=_floats, default=None,
                    help="residual levels for imperfect SIC (kappa1 = kappa2)")

    va = sub.add_parser("validate", help="compare closed forms against simulation")
    common(va)
    va.add_argument("--snr-grid", type=_floats, default=(10.0, 20.0, 30.0, 40.0))
    va.add_argument("--kappas", type=_floats, default=(0.02**2, 0.04**2))
    va.add_argument("--oc-snr-db", type=float, default=40.0)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            run = load_config(args.config)
            if args.kappas is not None:
                kappas = tuple((k, k) for k in args.kappas)
            elif run.kappa1 or run.kappa2:
                kappas = ((run.kappa1, run.kappa2),)
            else:
                kappas = ((0.04**2, 0.04**2),)
            try:
                schemes = tuple(Scheme(s) for s in args.schemes)
            except ValueError as exc:
                raise SpecError(str(exc)) from None
            spec = SweepSpec(args.axis, args.start, args.stop, args.step, args.metrics,
                             schemes, args.sic, kappas)
            n = run_sweep(args.config, spec, args.out, args.trials, args.seed,
                          args.workers, not args.no_timestamp)
            print(f"wrote {n} rows to {args.out}")
            return EXIT_OK
        passed, total = run_validation(args.config, args.out, args.trials, args.seed,
                                       args.workers, not args.no_timestamp,
                                       snr_grid=args.snr_grid, kappas=args.kappas,
                                       oc_snr_db=args.oc_snr_db)
        print(f"{'PASS' if passed == total else 'FAIL'}: {passed}/{total} checks passed")
        return EXIT_OK if passed == total else EXIT_FAILED
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
