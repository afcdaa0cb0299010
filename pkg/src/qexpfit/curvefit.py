"""The least-squares curve-fitting estimator and the R^2 statistic.

This is the baseline the Monte Carlo harness compares the MLE against: it
regresses the log empirical survival on the model's log survival curve,

    (theta~, sigma~) = argmin sum_i (log S_n(x_i) + theta log(1 + x_i/sigma))^2,

where S_n(x) is the fraction of sample points >= x.  The sum runs over all
observations; tied values are collapsed to one evaluation point weighted by
multiplicity, which leaves S_n well-defined and the objective unchanged.

For fixed sigma the optimal slope is the regression-through-origin
coefficient theta(sigma) = -sum(w a b)/sum(w b^2) with a = log S_n and
b = log(1 + x/sigma), so the search is one-dimensional in log sigma, with
the same expanding-grid scan and boundary semantics as the likelihood
solver.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from ._profile import golden_section, scan_log_grid
from .data import Sample
from .errors import DegenerateSampleError, UndefinedStatisticError
from .estimation import INTERIOR, SIGMA_UPPER_BOUND, SolverConfig
from .params import ThetaSigma


@dataclass(frozen=True)
class EmpiricalSurvival:
    """S_n evaluated at the distinct sample values, with multiplicities."""

    x: np.ndarray
    s: np.ndarray
    weights: np.ndarray

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.s.tolist()))


@dataclass(frozen=True)
class CurveFitResult:
    """Least-squares estimates with the objective value and R^2 at the optimum."""

    params: ThetaSigma
    sse: float
    r_squared: float
    converged: bool = True
    boundary_flag: str = INTERIOR


def empirical_survival(s: Sample) -> EmpiricalSurvival:
    """Fraction of points >= x at each distinct data value (minimum value 1/n)."""
    x, counts = np.unique(s.values, return_counts=True)
    below = np.concatenate(([0], np.cumsum(counts)[:-1]))
    surv = (s.n - below) / s.n
    return EmpiricalSurvival(x=x, s=surv, weights=counts.astype(np.float64))


def _design(s: Sample):
    emp = empirical_survival(s)
    a = np.ascontiguousarray(np.log(emp.s))
    return np.ascontiguousarray(emp.x), emp.weights, a


def curvefit(s: Sample, cfg: SolverConfig = SolverConfig()) -> CurveFitResult:
    """Minimize the squared log-survival mismatch over (theta, sigma)."""
    x, w, a = _design(s)
    if x.size < 2:
        raise DegenerateSampleError("curve fitting needs at least two distinct values")

    def objective(ln_sigma):
        sigma = math.exp(ln_sigma)
        sab, sbb, saa = K.curvefit_sums(x, w, a, sigma)
        if sbb <= 0.0:
            return -math.inf, math.nan
        theta = -sab / sbb
        sse = saa - sab * sab / sbb
        return -sse, theta

    sigma_max = cfg.sigma_max_factor * float(np.max(x))
    loc = float(np.median(s.values))
    if loc <= 0.0:
        loc = float(np.mean(s.values))
    scan = scan_log_grid(objective, loc, cfg.sigma_bracket_factor, sigma_max)

    if scan.hit_upper:
        sigma = math.exp(scan.ln_sigmas[-1])
        theta = scan.extras[-1]
        params = ThetaSigma(theta, sigma)
        return CurveFitResult(
            params=params,
            sse=-scan.values[-1],
            r_squared=r_squared(s, params),
            converged=False,
            boundary_flag=SIGMA_UPPER_BOUND,
        )

    k = scan.best
    lo = scan.ln_sigmas[max(k - 1, 0)]
    hi = scan.ln_sigmas[min(k + 1, len(scan.ln_sigmas) - 1)]
    ln_s, neg_sse, theta, _ = golden_section(objective, lo, hi, tol=1e-12, max_iter=cfg.max_iter)
    params = ThetaSigma(theta, math.exp(ln_s))
    return CurveFitResult(
        params=params,
        sse=-neg_sse,
        r_squared=r_squared(s, params),
        converged=True,
        boundary_flag=INTERIOR,
    )


def r_squared(s: Sample, p: ThetaSigma) -> float:
    """Fraction of the variance in log S_n explained by the fitted survival curve.

    Popular as a specification check, and unreliable for exactly that
    purpose: smooth non-members of the family routinely score close to 1.
    """
    x, w, a = _design(s)
    sab, sbb, saa = K.curvefit_sums(x, w, a, p.sigma)
    n_eff = float(w.sum())
    mean_a = float((w * a).sum()) / n_eff
    ss_tot = saa - n_eff * mean_a * mean_a
    if ss_tot <= 0.0:
        raise UndefinedStatisticError("log survival has zero variance; R^2 is undefined")
    # sum w (a + theta b)^2 expanded through the kernel sums.
    ss_res = saa + 2.0 * p.theta * sab + p.theta**2 * sbb
    return 1.0 - ss_res / ss_tot
