"""Mis-specification checks for a fitted model.

Three complementary heuristics:

* ``gof_bootstrap``: a Kolmogorov-Smirnov goodness-of-fit test whose null
  distribution is calibrated by parametric bootstrap.  Each replicate is
  REFIT before its KS distance is computed; that refitting is what adjusts
  the test for parameters having been estimated from the same data.
* ``misspecification_report``: compares the expected information at the
  fit against the observed information (their Frobenius distance is ~0
  under a correct model), and parametric against non-parametric bootstrap
  standard errors (consistent for the same variance under a correct
  model).  Thresholds are advisory heuristics and the output labels them
  as such; neither check is a formal test.

Censored samples are compared against the conditional (tail) CDF
throughout, and goodness-of-fit replicates are drawn from the tail only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Sample
from .distribution import sample_tail
from .errors import BootstrapUnstableError, ConvergenceError, QexpFitError
from .estimation import FitResult, SolverConfig, _fit
from .inference import EXPECTED, OBSERVED, information_for_fit
from .params import ThetaSigma
from .resampling import (
    NONPARAMETRIC,
    PARAMETRIC,
    PARAM_NAMES,
    BootstrapConfig,
    bootstrap,
    run_indexed,
)

INFO_DISCREPANCY_FLAG = 0.25
SE_RATIO_BAND = (0.7, 1.4)


@dataclass(frozen=True)
class GofReport:
    """KS statistic with its bootstrap-calibrated p-value."""

    ks_statistic: float
    p_value: float
    B_used: int


@dataclass(frozen=True)
class MisspecReport:
    """Heuristic discrepancy measures between model-based and data-based uncertainty."""

    info_discrepancy: float
    se_ratio: dict
    notes: tuple


def _conditional_cdf(x: np.ndarray, p: ThetaSigma, x0: float) -> np.ndarray:
    # P(X < x | X >= x0) = 1 - ((sigma + x)/(sigma + x0))**(-theta)
    return -np.expm1(-p.theta * np.log1p((x - x0) / (p.sigma + x0)))


def ks_statistic(s: Sample, p: ThetaSigma) -> float:
    """Two-sided sup distance between the empirical and fitted CDFs.

    Censored samples are measured against the conditional tail CDF.
    """
    xs = np.sort(s.values)
    f = _conditional_cdf(xs, p, s.x0)
    steps = np.arange(1, s.n + 1) / s.n
    d_plus = float(np.max(steps - f))
    d_minus = float(np.max(f - (steps - 1.0 / s.n)))
    return max(d_plus, d_minus, 0.0)


def gof_bootstrap(
    s: Sample,
    fit: FitResult,
    cfg: BootstrapConfig = BootstrapConfig(),
    solver: SolverConfig = SolverConfig(),
) -> GofReport:
    """Parametric-bootstrap calibration of the KS distance at the fit.

    p-value = (1 + #{D_b >= D}) / (B_used + 1), computed over the
    replicates whose refit succeeded.
    """
    if not fit.usable:
        raise ConvergenceError("gof_bootstrap needs a converged (or boundary-flagged) fit")
    d_obs = ks_statistic(s, fit.params)
    n = s.n
    d_boot = np.full(cfg.B, np.nan)

    def task(b):
        stream = cfg.seed.child(b)
        try:
            y = sample_tail(fit.params, s.x0, n, stream)
            refit = _fit(y.values, y.x0, solver)
            if not refit.usable:
                return
            d_boot[b] = ks_statistic(y, refit.params)
        except QexpFitError:
            return

    run_indexed(task, cfg.B, cfg.workers)

    good = d_boot[~np.isnan(d_boot)]
    b_used = int(good.size)
    if b_used == 0:
        raise ConvergenceError("every goodness-of-fit replicate failed to refit")
    p_value = (1.0 + float(np.sum(good >= d_obs))) / (b_used + 1.0)
    return GofReport(ks_statistic=d_obs, p_value=p_value, B_used=b_used)


def relative_frobenius(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b||_F / ||a||_F; zero exactly when the matrices are identical."""
    denom = float(np.linalg.norm(a))
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(a - b)) / denom


def misspecification_report(
    s: Sample,
    fit: FitResult,
    cfg: BootstrapConfig = BootstrapConfig(),
    solver: SolverConfig = SolverConfig(),
) -> MisspecReport:
    """Information-matrix and bootstrap-agreement heuristics at the fit.

    The two bootstraps use disjoint substreams of ``cfg.seed`` so the
    report is reproducible as a whole.
    """
    if not fit.usable:
        raise ConvergenceError("misspecification_report needs a usable fit")

    expected = information_for_fit(s, fit, EXPECTED).entries
    observed = information_for_fit(s, fit, OBSERVED).entries
    discrepancy = relative_frobenius(expected, observed)

    notes = []

    def run_mode(mode, stream):
        try:
            return bootstrap(
                s, fit,
                BootstrapConfig(B=cfg.B, level=cfg.level, mode=mode,
                                seed=stream, workers=cfg.workers),
                solver,
            )
        except BootstrapUnstableError as err:
            failures = cfg.B if err.partial is None else err.partial.failures
            notes.append(
                f"heuristic flag: {mode} bootstrap was unstable "
                f"({failures} of {cfg.B} replicates failed to converge); "
                "instability itself suggests the model poorly matches the data"
            )
            return err.partial

    par = run_mode(PARAMETRIC, cfg.seed.child(0))
    non = run_mode(NONPARAMETRIC, cfg.seed.child(1))
    if par is None or non is None:
        ratio = {name: float("nan") for name in PARAM_NAMES}
    else:
        ratio = {name: par.se[name] / non.se[name] for name in PARAM_NAMES}
    if discrepancy > INFO_DISCREPANCY_FLAG:
        notes.append(
            "heuristic flag: expected vs observed information differ by "
            f"{discrepancy:.3f} relative Frobenius (> {INFO_DISCREPANCY_FLAG}); "
            "the model may be mis-specified"
        )
    lo, hi = SE_RATIO_BAND
    for name in PARAM_NAMES:
        if not math.isnan(ratio[name]) and not lo <= ratio[name] <= hi:
            notes.append(
                f"heuristic flag: parametric/nonparametric bootstrap SE ratio for "
                f"{name} is {ratio[name]:.3f}, outside [{lo}, {hi}]"
            )
    return MisspecReport(
        info_discrepancy=discrepancy,
        se_ratio=ratio,
        notes=tuple(notes),
    )
