"""Command-line interface.

Subcommands:

* ``fit``         maximum-likelihood fit of a data file, with optional
                  censoring, bootstrap, goodness-of-fit, and Wald intervals
* ``sample``      draw random variates from a given parameter point
* ``experiment``  Monte Carlo comparison of the MLE against curve fitting,
                  written as two CSV files
* ``validate``    mis-specification report for a data file

Exit codes: 0 success, 1 data error, 2 usage error, 3 non-convergence.
Every command that consumes randomness takes ``--seed``; given the same
seed (and any ``--workers`` count) the output is byte-identical across
runs.  Reports always carry both the (theta, sigma) and (q, kappa)
parameterizations.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .data import Sample
from .curvefit import r_squared
from .diagnostics import gof_bootstrap, misspecification_report
from .errors import ConvergenceError, DataError, QexpFitError, UndefinedStatisticError
from .estimation import (
    FitResult,
    SolverConfig,
    censored_log_likelihood,
    fit_sample,
    mle_sigma_given_theta,
    mle_theta_given_sigma,
)
from .inference import EXPECTED, OBSERVED, covariance_report
from .mc import DEFAULT_SIZES, ExperimentPlan, run_experiment
from .params import QKappa, ThetaSigma, to_q_kappa, to_theta_sigma
from .resampling import BootstrapConfig, bootstrap
from .distribution import sample_tail
from .rng import RngStream

# Fixed substream layout so the subcommands never share draws.
_STREAM_SAMPLE = 0
_STREAM_BOOT = 1
_STREAM_GOF = 2
_STREAM_EXPERIMENT = 3
_STREAM_MISSPEC = 4

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_NOCONV = 3


class UsageError(QexpFitError):
    """Command-line misuse detected after argparse."""


def _parse_number(text: str) -> float:
    """Parse a float, accepting simple fractions such as 4/3."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return float(num) / float(den)
    return float(text)


def ingest(path: str, x0: float = 0.0) -> Sample:
    """Read one numeric value per line; '#' comments and blank lines are skipped."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as err:
        raise DataError(f"cannot read {path!r}: {err}") from err

    values = []
    numbers_at = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            value = float(stripped)
        except ValueError as err:
            raise DataError(f"{path}:{lineno}: cannot parse {stripped!r} as a number") from err
        values.append(value)
        numbers_at.append(lineno)

    if not values:
        raise DataError(f"{path}: no data values found")

    arr = np.asarray(values, dtype=np.float64)
    bad = [numbers_at[i] for i in np.nonzero(~np.isfinite(arr) | (arr < 0.0))[0]]
    if bad:
        raise DataError(f"{path}: negative or non-finite values at line(s) {_fmt_lines(bad)}")
    if x0 > 0.0:
        below = [numbers_at[i] for i in np.nonzero(arr < x0)[0]]
        if below:
            raise DataError(
                f"{path}: values below the censoring threshold {x0!r} "
                f"at line(s) {_fmt_lines(below)}"
            )
    return Sample(arr, x0=x0)


def _fmt_lines(lines):
    return ", ".join(str(l) for l in lines)


def _g17(x) -> str:
    return format(float(x), ".17g")


def _render_text(payload, indent=0) -> str:
    pieces = []
    pad = "  " * indent
    for key, value in payload.items():
        if isinstance(value, dict):
            pieces.append(f"{pad}{key}:")
            pieces.append(_render_text(value, indent + 1))
        elif isinstance(value, float):
            pieces.append(f"{pad}{key}: {_g17(value)}")
        elif isinstance(value, (list, tuple)):
            rendered = ", ".join(_g17(v) if isinstance(v, float) else str(v) for v in value)
            pieces.append(f"{pad}{key}: [{rendered}]")
        else:
            pieces.append(f"{pad}{key}: {value}")
    return "\n".join(pieces)


def _emit(payload, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(_render_text(payload))


def _fit_payload(fit: FitResult):
    return {
        "theta": fit.params.theta,
        "sigma": fit.params.sigma,
        "q": fit.params_qk.q,
        "kappa": fit.params_qk.kappa,
        "loglik": fit.loglik,
        "converged": fit.converged,
        "boundary_flag": fit.boundary_flag,
        "iterations": fit.iterations,
        "residual": fit.residual,
    }


def _bootstrap_payload(summary):
    return {
        "B": summary.B,
        "mode": summary.mode,
        "level": summary.level,
        "failures": summary.failures,
        "bias": summary.bias,
        "se": summary.se,
        "ci": {k: list(v) for k, v in summary.ci.items()} if summary.ci else None,
    }


def _add_common_output_flags(parser):
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--seed", type=int, default=0, help="64-bit master seed (default 0)")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers (default 1)")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qexpfit",
        description="Fit and probe q-exponential (type II generalized Pareto) distributions.",
    )
    parser.add_argument("--version", action="version", version=f"qexpfit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="maximum-likelihood fit of a data file")
    p_fit.add_argument("data", help="text file, one value per line, '#' comments allowed")
    p_fit.add_argument("--censor", type=_parse_number, default=0.0, metavar="X0",
                       help="left-censoring threshold the data were collected above")
    group = p_fit.add_mutually_exclusive_group()
    group.add_argument("--fix-theta", type=_parse_number, metavar="THETA",
                       help="hold the shape fixed and estimate only the scale")
    group.add_argument("--fix-sigma", type=_parse_number, metavar="SIGMA",
                       help="hold the scale fixed and estimate only the shape")
    p_fit.add_argument("--boot", type=int, default=0, metavar="B",
                       help="bootstrap replicates (0 disables the bootstrap)")
    p_fit.add_argument("--boot-mode", choices=("parametric", "nonparametric"),
                       default="parametric")
    p_fit.add_argument("--ci", type=float, default=0.90, metavar="LEVEL",
                       help="confidence level for Wald and bootstrap intervals")
    p_fit.add_argument("--gof", action="store_true",
                       help="bootstrap-calibrated KS goodness-of-fit (uses --boot count, default 1000)")
    p_fit.add_argument("--info", choices=(EXPECTED, OBSERVED), default=EXPECTED,
                       help="information matrix used for Wald standard errors")
    _add_common_output_flags(p_fit)

    p_sample = sub.add_parser("sample", help="draw random variates")
    p_sample.add_argument("--theta", type=_parse_number)
    p_sample.add_argument("--sigma", type=_parse_number)
    p_sample.add_argument("--q", type=_parse_number)
    p_sample.add_argument("--kappa", type=_parse_number)
    p_sample.add_argument("-n", type=int, required=True, help="number of draws")
    p_sample.add_argument("--censor", type=_parse_number, default=0.0, metavar="X0",
                          help="draw from the tail X >= X0 only")
    p_sample.add_argument("--seed", type=int, default=0)

    p_exp = sub.add_parser("experiment", help="Monte Carlo MLE vs curve-fit comparison")
    p_exp.add_argument("--sizes", default=",".join(str(n) for n in DEFAULT_SIZES),
                       help="comma-separated strictly increasing sample sizes")
    p_exp.add_argument("--reps", type=int, default=500)
    p_exp.add_argument("--theta", type=_parse_number, default=3.0)
    p_exp.add_argument("--sigma", type=_parse_number, default=200.0)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--workers", type=int, default=1)
    p_exp.add_argument("--out-prefix", required=True,
                       help="writes <prefix>_raw.csv and <prefix>_summary.csv")

    p_val = sub.add_parser("validate", help="mis-specification report for a data file")
    p_val.add_argument("data")
    p_val.add_argument("--boot", type=int, default=1000, metavar="B",
                       help="bootstrap replicates for the GOF and SE-ratio checks")
    _add_common_output_flags(p_val)

    return parser


def _cmd_fit(args) -> int:
    s = ingest(args.data, x0=args.censor)
    seed = RngStream(args.seed)
    solver = SolverConfig()

    if args.fix_theta is not None or args.fix_sigma is not None:
        if s.x0 > 0.0:
            raise UsageError("--fix-theta/--fix-sigma support only uncensored data")
        if args.fix_theta is not None:
            theta = float(args.fix_theta)
            sigma = mle_sigma_given_theta(s, theta, solver)
        else:
            sigma = float(args.fix_sigma)
            theta = mle_theta_given_sigma(s, sigma)
        params = ThetaSigma(theta, sigma)
        fit = FitResult(
            params=params,
            params_qk=to_q_kappa(params),
            loglik=censored_log_likelihood(s, params),
            converged=True,
            iterations=0,
            residual=0.0,
        )
        fixed = True
    else:
        fit = fit_sample(s, solver)
        fixed = False

    payload = {
        "version": __version__,
        "seed": args.seed,
        "source": args.data,
        "n": s.n,
        "x0": s.x0,
        **_fit_payload(fit),
        "se": None,
        "ci": None,
        "bootstrap": None,
        "gof": None,
    }

    if not fixed and fit.converged:
        report = covariance_report(s, fit, kind=args.info, level=args.ci)
        payload["se"] = {
            "theta": report.se_theta,
            "sigma": report.se_sigma,
            "q": report.se_q,
            "kappa": report.se_kappa,
        }
        payload["ci"] = {
            "level": report.ci_level,
            "kind": report.kind,
            **{k: list(v) for k, v in report.wald_cis.items()},
        }

    if args.boot > 0 and fit.usable:
        cfg = BootstrapConfig(B=args.boot, level=args.ci, mode=args.boot_mode,
                              seed=seed.child(_STREAM_BOOT), workers=args.workers)
        payload["bootstrap"] = _bootstrap_payload(bootstrap(s, fit, cfg, solver))

    if args.gof and fit.usable:
        cfg = BootstrapConfig(B=args.boot if args.boot > 0 else 1000,
                              seed=seed.child(_STREAM_GOF), workers=args.workers)
        gof = gof_bootstrap(s, fit, cfg, solver)
        payload["gof"] = {
            "ks_statistic": gof.ks_statistic,
            "p_value": gof.p_value,
            "B_used": gof.B_used,
        }

    _emit(payload, args.format)
    return EXIT_OK if fit.converged else EXIT_NOCONV


def _cmd_sample(args) -> int:
    have_ts = args.theta is not None or args.sigma is not None
    have_qk = args.q is not None or args.kappa is not None
    if have_ts == have_qk:
        raise UsageError("give exactly one parameterization: --theta/--sigma or --q/--kappa")
    if have_ts:
        if args.theta is None or args.sigma is None:
            raise UsageError("--theta and --sigma must be given together")
        params = ThetaSigma(args.theta, args.sigma)
    else:
        if args.q is None or args.kappa is None:
            raise UsageError("--q and --kappa must be given together")
        params = to_theta_sigma(QKappa(args.q, args.kappa))
    if args.n < 1:
        raise UsageError("-n must be >= 1")

    stream = RngStream(args.seed).child(_STREAM_SAMPLE)
    draws = sample_tail(params, args.censor, args.n, stream)
    sys.stdout.write("\n".join(_g17(v) for v in draws.values) + "\n")
    return EXIT_OK


def _csv_bool(flag: bool) -> str:
    return "true" if flag else "false"


def _cmd_experiment(args) -> int:
    sizes = tuple(int(tok) for tok in args.sizes.split(",") if tok.strip())
    plan = ExperimentPlan(
        truth=ThetaSigma(args.theta, args.sigma),
        sizes=sizes,
        reps=args.reps,
        seed=RngStream(args.seed).child(_STREAM_EXPERIMENT),
        workers=args.workers,
    )
    summary = run_experiment(plan)

    raw_path = f"{args.out_prefix}_raw.csv"
    summary_path = f"{args.out_prefix}_summary.csv"
    try:
        with open(raw_path, "w", encoding="utf-8") as fh:
            fh.write("n,rep,method,theta_hat,sigma_hat,q_hat,kappa_hat,converged\n")
            for r in summary.raw:
                fh.write(
                    f"{r.n},{r.rep},{r.method},{_g17(r.theta_hat)},{_g17(r.sigma_hat)},"
                    f"{_g17(r.q_hat)},{_g17(r.kappa_hat)},{_csv_bool(r.converged)}\n"
                )
        with open(summary_path, "w", encoding="utf-8") as fh:
            fh.write("n,method,q_median,q_p05,q_p95,q_min,q_max,failures\n")
            for row in summary.rows:
                fh.write(
                    f"{row.n},{row.method},{_g17(row.q_median)},{_g17(row.q_p05)},"
                    f"{_g17(row.q_p95)},{_g17(row.q_min)},{_g17(row.q_max)},{row.failures}\n"
                )
    except OSError as err:
        print(f"error: cannot write output: {err}", file=sys.stderr)
        return EXIT_DATA
    print(f"wrote {raw_path} and {summary_path}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    s = ingest(args.data)
    seed = RngStream(args.seed)
    solver = SolverConfig()

    fit = fit_sample(s, solver)
    cfg_gof = BootstrapConfig(B=args.boot, seed=seed.child(_STREAM_GOF), workers=args.workers)
    gof = gof_bootstrap(s, fit, cfg_gof, solver)
    cfg_mis = BootstrapConfig(B=args.boot, seed=seed.child(_STREAM_MISSPEC), workers=args.workers)
    report = misspecification_report(s, fit, cfg_mis, solver)
    try:
        r2 = r_squared(s, fit.params)
    except UndefinedStatisticError:
        r2 = None

    payload = {
        "version": __version__,
        "seed": args.seed,
        "source": args.data,
        "n": s.n,
        "x0": s.x0,
        **_fit_payload(fit),
        "gof": {
            "ks_statistic": gof.ks_statistic,
            "p_value": gof.p_value,
            "B_used": gof.B_used,
        },
        "misspecification": {
            "info_discrepancy": report.info_discrepancy,
            "se_ratio": {
                k: (None if math.isnan(v) else v) for k, v in report.se_ratio.items()
            },
            "notes": list(report.notes),
        },
        "r_squared": r2,
        "note": "thresholds in 'misspecification' are heuristic, not significance tests",
    }
    _emit(payload, args.format)
    return EXIT_OK if fit.converged else EXIT_NOCONV


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "fit": _cmd_fit,
        "sample": _cmd_sample,
        "experiment": _cmd_experiment,
        "validate": _cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_NOCONV
    except QexpFitError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
