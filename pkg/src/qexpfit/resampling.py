"""Parametric and non-parametric bootstrap for the fitted family.

Parametric mode simulates fresh samples from the fitted law (drawn from the
tail only when the data were censored); non-parametric mode resamples the
observed values with replacement and keeps the original threshold.  Every
replicate refits with the same solver settings and draws from its own
substream ``seed.child(b)``, so results are bit-identical for any worker
count.  Replicates that fail to converge are counted and excluded from the
summaries, never retried (retrying would bias the bootstrap distribution).
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .data import Sample
from .distribution import sample_tail
from .errors import (
    BootstrapUnstableError,
    ConvergenceError,
    DataError,
    InsufficientReplicatesError,
    QexpFitError,
)
from .estimation import FitResult, SolverConfig, _fit
from .rng import RngStream

PARAMETRIC = "parametric"
NONPARAMETRIC = "nonparametric"

PARAM_NAMES = ("theta", "sigma", "q", "kappa")


@dataclass(frozen=True)
class BootstrapConfig:
    """Replicate count, CI level, resampling mode, and stream for a bootstrap run."""

    B: int = 1000
    level: float = 0.90
    mode: str = PARAMETRIC
    seed: RngStream = field(default_factory=RngStream)
    workers: int = 1

    def __post_init__(self):
        if self.B < 1:
            raise DataError(f"B must be >= 1, got {self.B!r}")
        if not 0.0 < self.level < 1.0:
            raise DataError(f"level must lie in (0, 1), got {self.level!r}")
        if self.mode not in (PARAMETRIC, NONPARAMETRIC):
            raise DataError(f"mode must be {PARAMETRIC!r} or {NONPARAMETRIC!r}, got {self.mode!r}")
        if self.workers < 1:
            raise DataError(f"workers must be >= 1, got {self.workers!r}")


@dataclass(frozen=True)
class BootstrapSummary:
    """Per-parameter bias, standard error, and percentile CIs from B replicates."""

    bias: dict
    se: dict
    ci: dict
    replicate_estimates: np.ndarray
    failures: int
    B: int
    level: float
    mode: str


def midpoint_quantile(values, prob) -> float:
    """Empirical quantile with midpoint interpolation between order statistics."""
    return float(np.quantile(np.asarray(values, dtype=np.float64), prob, method="midpoint"))


def percentile_ci(replicates, level: float):
    """Percentile interval ((1-level)/2, (1+level)/2) from >= 100 replicates."""
    replicates = np.asarray(replicates, dtype=np.float64)
    if replicates.size < 100:
        raise InsufficientReplicatesError(
            f"percentile intervals need at least 100 replicates, got {replicates.size}"
        )
    if not 0.0 <= level < 1.0:
        raise DataError(f"level must lie in [0, 1), got {level!r}")
    lo = midpoint_quantile(replicates, 0.5 * (1.0 - level))
    hi = midpoint_quantile(replicates, 0.5 * (1.0 + level))
    return lo, hi


def run_indexed(task, count: int, workers: int):
    """Run ``task(i)`` for i in range(count), optionally on a thread pool.

    Tasks write into preallocated slots keyed by index, so the result is
    independent of scheduling and worker count.
    """
    if workers <= 1:
        for i in range(count):
            task(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(task, range(count)))


def _estimates_row(fit: FitResult):
    return (fit.params.theta, fit.params.sigma, fit.params_qk.q, fit.params_qk.kappa)


def bootstrap(
    s: Sample,
    fit: FitResult,
    cfg: BootstrapConfig = BootstrapConfig(),
    solver: SolverConfig = SolverConfig(),
) -> BootstrapSummary:
    """Bootstrap the MLE around an existing fit.

    Raises ``BootstrapUnstableError`` (carrying the partial summary) when
    more than 10% of replicates fail to converge.
    """
    if not fit.usable:
        raise ConvergenceError("bootstrap needs a converged (or boundary-flagged) fit")
    n = s.n
    values = s.values
    rows = np.full((cfg.B, 4), np.nan)

    def task(b):
        stream = cfg.seed.child(b)
        try:
            if cfg.mode == PARAMETRIC:
                y = sample_tail(fit.params, s.x0, n, stream)
            else:
                idx = stream.generator().integers(0, n, size=n)
                y = Sample(values[idx], x0=s.x0)
            refit = _fit(y.values, y.x0, solver)
        except QexpFitError:
            return
        if refit.converged:
            rows[b] = _estimates_row(refit)

    run_indexed(task, cfg.B, cfg.workers)

    good = rows[~np.isnan(rows[:, 0])]
    failures = cfg.B - good.shape[0]
    rows.setflags(write=False)

    summary = None
    if good.shape[0] >= 2:
        point = np.array(_estimates_row(fit))
        bias = dict(zip(PARAM_NAMES, (good.mean(axis=0) - point).tolist()))
        se = dict(zip(PARAM_NAMES, good.std(axis=0, ddof=1).tolist()))
        ci = None
        if good.shape[0] >= 100:
            ci = {
                name: percentile_ci(good[:, j], cfg.level)
                for j, name in enumerate(PARAM_NAMES)
            }
        summary = BootstrapSummary(
            bias=bias,
            se=se,
            ci=ci,
            replicate_estimates=rows,
            failures=failures,
            B=cfg.B,
            level=cfg.level,
            mode=cfg.mode,
        )

    if failures > 0.1 * cfg.B:
        raise BootstrapUnstableError(
            f"{failures} of {cfg.B} bootstrap replicates failed to converge "
            "(more than 10%); the model may be a poor match for these data",
            partial=summary,
        )
    if summary is None:
        raise InsufficientReplicatesError("fewer than 2 bootstrap replicates converged")
    return summary
