"""qexpfit: maximum-likelihood fitting of q-exponential distributions.

The family is the heavy-tailed type II generalized Pareto with survival
function (1 + x/sigma)**(-theta) on x >= 0, equivalently the q > 1 branch
of the q-exponential family.  The package provides the full distribution
surface, plain and left-censored maximum likelihood, asymptotic and
bootstrap uncertainty, a least-squares curve-fitting baseline, heuristic
mis-specification diagnostics, and a Monte Carlo harness comparing the
estimators.
"""
__version__ = "0.1.0"

from .curvefit import CurveFitResult, EmpiricalSurvival, curvefit, empirical_survival, r_squared
from .data import Sample
from .diagnostics import (
    GofReport,
    MisspecReport,
    gof_bootstrap,
    ks_statistic,
    misspecification_report,
)
from .distribution import (
    cdf,
    density,
    log_density,
    quantile,
    sample,
    sample_gamma_mixture,
    sample_tail,
    survival,
)
from .errors import (
    BootstrapUnstableError,
    ConvergenceError,
    DataError,
    DegenerateSampleError,
    DomainError,
    IllConditionedError,
    InsufficientDataError,
    InsufficientReplicatesError,
    MissingGroupError,
    ParameterError,
    QexpFitError,
    UndefinedStatisticError,
)
from .estimation import (
    INTERIOR,
    SIGMA_UPPER_BOUND,
    FitResult,
    SolverConfig,
    censored_log_likelihood,
    fit_sample,
    log_likelihood,
    mle_joint,
    mle_joint_censored,
    mle_sigma_given_theta,
    mle_theta_given_sigma,
)
from .inference import (
    CovarianceReport,
    InfoMatrix,
    covariance_report,
    fisher_information,
    fisher_information_censored,
    inv_norm_cdf,
    observed_information,
)
from .mc import ExperimentPlan, ExperimentSummary, RawRecord, SummaryRow, run_experiment, summarize
from .params import QKappa, ThetaSigma, to_q_kappa, to_theta_sigma
from .resampling import (
    BootstrapConfig,
    BootstrapSummary,
    bootstrap,
    midpoint_quantile,
    percentile_ci,
)
from .rng import RngStream

__all__ = [
    "__version__",
    "BootstrapConfig",
    "BootstrapSummary",
    "BootstrapUnstableError",
    "ConvergenceError",
    "CovarianceReport",
    "CurveFitResult",
    "DataError",
    "DegenerateSampleError",
    "DomainError",
    "EmpiricalSurvival",
    "ExperimentPlan",
    "ExperimentSummary",
    "FitResult",
    "GofReport",
    "IllConditionedError",
    "InfoMatrix",
    "InsufficientDataError",
    "InsufficientReplicatesError",
    "INTERIOR",
    "MissingGroupError",
    "MisspecReport",
    "ParameterError",
    "QexpFitError",
    "QKappa",
    "RawRecord",
    "RngStream",
    "Sample",
    "SIGMA_UPPER_BOUND",
    "SolverConfig",
    "SummaryRow",
    "ThetaSigma",
    "UndefinedStatisticError",
    "bootstrap",
    "cdf",
    "censored_log_likelihood",
    "covariance_report",
    "curvefit",
    "density",
    "empirical_survival",
    "fisher_information",
    "fisher_information_censored",
    "fit_sample",
    "gof_bootstrap",
    "inv_norm_cdf",
    "ks_statistic",
    "log_density",
    "log_likelihood",
    "midpoint_quantile",
    "misspecification_report",
    "mle_joint",
    "mle_joint_censored",
    "mle_sigma_given_theta",
    "mle_theta_given_sigma",
    "observed_information",
    "percentile_ci",
    "quantile",
    "r_squared",
    "run_experiment",
    "sample",
    "sample_gamma_mixture",
    "sample_tail",
    "summarize",
    "survival",
    "to_q_kappa",
    "to_theta_sigma",
]
