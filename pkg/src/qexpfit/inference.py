"""Asymptotic uncertainty for the MLE.

The expected (Fisher) information per observation in (theta, sigma)
coordinates is

    I(theta, sigma) = [ 1/theta^2              -1/((theta+1) sigma)          ]
                      [ -1/((theta+1) sigma)   theta/(sigma^2 (theta+2))     ]

and for data censored below x0 it is the same matrix evaluated at
(theta, sigma + x0).  The observed information J is the sample negative
Hessian of the (censored) log-likelihood divided by n; its entries follow
from differentiating the score:

    d2/dtheta2      = -n/theta^2
    d2/dtheta dsigma = sum_i x_i/(sigma(sigma+x_i)) - n*x0/(sigma(sigma+x0))
    d2/dsigma2      = n/sigma^2
                      - (theta+1) sum_i x_i(2 sigma+x_i)/(sigma^2 (sigma+x_i)^2)
                      + n*theta*x0(2 sigma+x0)/(sigma^2 (sigma+x0)^2)

Either information matrix, inverted and divided by n, is the asymptotic
covariance of the MLE; the delta method with Jacobian
G = [[-1/theta^2, 0], [-sigma/theta^2, 1/theta]] carries it to (q, kappa).

Wald z-quantiles come from a built-in rational approximation of the
inverse normal CDF (good to well below 1e-9), so reports need no
dependency beyond numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .data import Sample
from .errors import ConvergenceError, DomainError, IllConditionedError
from .estimation import FitResult
from .params import ThetaSigma

THETA_SIGMA = "theta_sigma"
Q_KAPPA = "q_kappa"
EXPECTED = "expected"
OBSERVED = "observed"

_PARAM_NAMES = ("theta", "sigma", "q", "kappa")


@dataclass(frozen=True)
class InfoMatrix:
    """Symmetric 2x2 information matrix with coordinate and kind labels."""

    entries: np.ndarray
    coords: str = THETA_SIGMA
    kind: str = EXPECTED

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=np.float64)
        if entries.shape != (2, 2):
            raise DomainError(f"information matrix must be 2x2, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


@dataclass(frozen=True)
class CovarianceReport:
    """MLE covariance in both coordinate systems with Wald intervals."""

    cov_theta_sigma: np.ndarray
    cov_q_kappa: np.ndarray
    se_theta: float
    se_sigma: float
    se_q: float
    se_kappa: float
    ci_level: float
    wald_cis: dict
    kind: str


def fisher_information(p: ThetaSigma) -> InfoMatrix:
    """Expected information per observation, in (theta, sigma) coordinates."""
    off = -1.0 / ((p.theta + 1.0) * p.sigma)
    entries = np.array(
        [
            [1.0 / p.theta**2, off],
            [off, p.theta / (p.sigma**2 * (p.theta + 2.0))],
        ]
    )
    return InfoMatrix(entries, THETA_SIGMA, EXPECTED)


def fisher_information_censored(p: ThetaSigma, x0: float) -> InfoMatrix:
    """Expected information of a tail observation: I evaluated at (theta, sigma + x0)."""
    x0 = float(x0)
    if not math.isfinite(x0) or x0 < 0.0:
        raise DomainError(f"censoring threshold must be finite and >= 0, got {x0!r}")
    return fisher_information(ThetaSigma(p.theta, p.sigma + x0))


def observed_information(s: Sample, p: ThetaSigma) -> InfoMatrix:
    """Analytic J = -Hessian(loglik)/n of the (censored) log-likelihood at p."""
    x = s.values
    n = s.n
    theta, sigma, x0 = p.theta, p.sigma, s.x0

    h_tt = -n / theta**2
    h_ts = K.sum_xfrac(x, sigma) / sigma
    h_ss = n / sigma**2 - (theta + 1.0) / sigma**2 * K.sum_xfrac_sq(x, sigma)
    if x0 > 0.0:
        h_ts -= n * x0 / (sigma * (sigma + x0))
        t0 = x0 / (sigma + x0)
        h_ss += n * theta / sigma**2 * (t0 * (2.0 - t0))
    entries = np.array([[-h_tt / n, -h_ts / n], [-h_ts / n, -h_ss / n]])
    return InfoMatrix(entries, THETA_SIGMA, OBSERVED)


def _invert_2x2(m: np.ndarray, what: str) -> np.ndarray:
    a, b, c = m[0, 0], m[0, 1], m[1, 1]
    det = a * c - b * b
    if not math.isfinite(det) or det <= 0.0 or a <= 0.0:
        raise IllConditionedError(
            f"the {what} is singular or not positive definite (det={det!r}); "
            "standard errors are unavailable at this point"
        )
    return np.array([[c, -b], [-b, a]]) / det


def qk_jacobian(p: ThetaSigma) -> np.ndarray:
    """Jacobian d(q, kappa)/d(theta, sigma) used for delta-method propagation."""
    return np.array(
        [
            [-1.0 / p.theta**2, 0.0],
            [-p.sigma / p.theta**2, 1.0 / p.theta],
        ]
    )


def information_for_fit(s: Sample, fit: FitResult, kind: str = EXPECTED) -> InfoMatrix:
    """Information matrix at the fitted point, honoring the sample's censoring."""
    if kind == EXPECTED:
        if s.x0 > 0.0:
            return fisher_information_censored(fit.params, s.x0)
        return fisher_information(fit.params)
    if kind == OBSERVED:
        return observed_information(s, fit.params)
    raise DomainError(f"kind must be '{EXPECTED}' or '{OBSERVED}', got {kind!r}")


def covariance_report(
    s: Sample, fit: FitResult, kind: str = EXPECTED, level: float = 0.90
) -> CovarianceReport:
    """Asymptotic covariance, standard errors, and Wald intervals at the fit."""
    if not fit.converged:
        raise ConvergenceError("covariance_report needs an interior, converged fit")
    if not 0.0 < level < 1.0:
        raise DomainError(f"confidence level must lie in (0, 1), got {level!r}")

    info = information_for_fit(s, fit, kind)
    label = f"{info.kind} information matrix at the fit"
    cov_ts = _invert_2x2(info.entries, label) / s.n

    g = qk_jacobian(fit.params)
    cov_qk = g @ cov_ts @ g.T

    se_theta = math.sqrt(cov_ts[0, 0])
    se_sigma = math.sqrt(cov_ts[1, 1])
    se_q = math.sqrt(cov_qk[0, 0])
    se_kappa = math.sqrt(cov_qk[1, 1])

    z = inv_norm_cdf(0.5 * (1.0 + level))
    center = {
        "theta": fit.params.theta,
        "sigma": fit.params.sigma,
        "q": fit.params_qk.q,
        "kappa": fit.params_qk.kappa,
    }
    ses = {"theta": se_theta, "sigma": se_sigma, "q": se_q, "kappa": se_kappa}
    cis = {name: (center[name] - z * ses[name], center[name] + z * ses[name]) for name in _PARAM_NAMES}

    cov_ts.setflags(write=False)
    cov_qk.setflags(write=False)
    return CovarianceReport(
        cov_theta_sigma=cov_ts,
        cov_q_kappa=cov_qk,
        se_theta=se_theta,
        se_sigma=se_sigma,
        se_q=se_q,
        se_kappa=se_kappa,
        ci_level=level,
        wald_cis=cis,
        kind=info.kind,
    )


# Rational minimax approximation to the inverse normal CDF (Wichura's
# algorithm); relative error below 1e-15 over (0, 1).
_A = (
    3.3871328727963666080e0,
    1.3314166789178437745e2,
    1.9715909503065514427e3,
    1.3731693765509461125e4,
    4.5921953931549871457e4,
    6.7265770927008700853e4,
    3.3430575583588128105e4,
    2.5090809287301226727e3,
)
_B = (
    4.2313330701600911252e1,
    6.8718700749205790830e2,
    5.3941960214247511077e3,
    2.1213794301586595867e4,
    3.9307895800092710610e4,
    2.8729085735721942674e4,
    5.2264952788528545610e3,
)
_C = (
    1.42343711074968357734e0,
    4.63033784615654529590e0,
    5.76949722146069140550e0,
    3.64784832476320460504e0,
    1.27045825245236838258e0,
    2.41780725177450611770e-1,
    2.27238449892691845833e-2,
    7.74545014278341407640e-4,
)
_D = (
    2.05319162663775882187e0,
    1.67638483018380384940e0,
    6.89767334985100004550e-1,
    1.48103976427480074590e-1,
    1.51986665636164571966e-2,
    5.47593808499534494600e-4,
    1.05075007164441684324e-9,
)
_E = (
    6.65790464350110377720e0,
    5.46378491116411436990e0,
    1.78482653991729133580e0,
    2.96560571828504891230e-1,
    2.65321895265761230930e-2,
    1.24266094738807843860e-3,
    2.71155556874348757815e-5,
    2.01033439929228813265e-7,
)
_F = (
    5.99832206555887937690e-1,
    1.36929880922735805310e-1,
    1.48753612908506148525e-2,
    7.86869131145613259100e-4,
    1.84631831751005468180e-5,
    1.42151175831644588870e-7,
    2.04426310338993978564e-15,
)


def _horner(coeffs, r):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * r + c
    return acc


def inv_norm_cdf(p: float) -> float:
    """Standard normal quantile function."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"probability must lie strictly in (0, 1), got {p!r}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _horner(_A, r) / (_horner(_B, r) * r + 1.0)
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        val = _horner(_C, r) / (_horner(_D, r) * r + 1.0)
    else:
        r -= 5.0
        val = _horner(_E, r) / (_horner(_F, r) * r + 1.0)
    return -val if q < 0.0 else val
