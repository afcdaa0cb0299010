"""Distribution surface of the q-exponential (shape/scale) family.

Survival, CDF, density, log-density, and quantile for

    P(X >= x) = (1 + x/sigma)**(-theta),   x >= 0,

plus three samplers:

* ``sample``            inverse-transform draws (the primary sampler),
* ``sample_tail``       draws from the conditional law X | X >= x0,
* ``sample_gamma_mixture``  an independent construction used as a
  correctness oracle: X is exponential with random mean sigma/Z where
  Z ~ Gamma(theta, 1), which marginalizes to exactly this family.

All evaluations go through ``log1p``/``expm1`` so that x much smaller or
much larger than sigma loses no precision, and so quantiles stay exact for
survival probabilities near one.

Conventions: ``density`` returns 0 outside the support (it is evaluated
pointwise inside integrals), while ``survival`` raises for x < 0 (a
negative argument there is a caller bug).  Uniform variates are drawn on
(0, 1], never exactly 0, so a quantile is never infinite.
"""
from __future__ import annotations

import numpy as np

from .data import Sample
from .errors import DomainError
from .params import ThetaSigma
from .rng import RngStream


def _as_array(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _maybe_scalar(arr, scalar):
    return float(arr) if scalar else arr


def survival(p: ThetaSigma, x):
    """P(X >= x); strictly decreasing in x with survival(0) = 1."""
    arr, scalar = _as_array(x)
    if np.any(arr < 0.0):
        raise DomainError("survival is defined on x >= 0")
    out = np.exp(-p.theta * np.log1p(arr / p.sigma))
    return _maybe_scalar(out, scalar)


def cdf(p: ThetaSigma, x):
    """P(X < x) = 1 - survival(x), computed without cancellation."""
    arr, scalar = _as_array(x)
    if np.any(arr < 0.0):
        raise DomainError("cdf is defined on x >= 0")
    out = -np.expm1(-p.theta * np.log1p(arr / p.sigma))
    return _maybe_scalar(out, scalar)


def density(p: ThetaSigma, x):
    """Probability density (theta/sigma)(1 + x/sigma)**(-theta-1); 0 off support."""
    arr, scalar = _as_array(x)
    inside = arr >= 0.0
    safe = np.where(inside, arr, 0.0)
    out = (p.theta / p.sigma) * np.exp(-(p.theta + 1.0) * np.log1p(safe / p.sigma))
    out = np.where(inside, out, 0.0)
    return _maybe_scalar(out, scalar)


def log_density(p: ThetaSigma, x):
    """Log of ``density``; -inf off support, finite up to x ~ 1e300."""
    arr, scalar = _as_array(x)
    inside = arr >= 0.0
    safe = np.where(inside, arr, 0.0)
    out = np.log(p.theta) - np.log(p.sigma) - (p.theta + 1.0) * np.log1p(safe / p.sigma)
    out = np.where(inside, out, -np.inf)
    return _maybe_scalar(out, scalar)


def quantile(p: ThetaSigma, s):
    """The x with survival(x) = s, for survival probability s in (0, 1].

    s = 0 returns +inf (the support is unbounded); s outside [0, 1] raises.
    """
    arr, scalar = _as_array(s)
    if np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("survival probability must lie in [0, 1]")
    with np.errstate(divide="ignore"):
        out = p.sigma * np.expm1(-np.log(arr) / p.theta)
    return _maybe_scalar(out, scalar)


def _uniforms_open_closed(generator, n):
    # Generator.random covers [0, 1); reflect to (0, 1] so quantiles are finite.
    return 1.0 - generator.random(n)


def _check_count(n):
    if int(n) < 1:
        raise DomainError(f"need at least one draw, got n={n}")
    return int(n)


def sample(p: ThetaSigma, n: int, rng: RngStream) -> Sample:
    """n independent inverse-transform draws, deterministic given ``rng``."""
    return sample_tail(p, 0.0, n, rng)


def sample_tail(p: ThetaSigma, x0: float, n: int, rng: RngStream) -> Sample:
    """n draws from the conditional law X | X >= x0; reduces to ``sample`` at x0 = 0."""
    x0 = float(x0)
    if not np.isfinite(x0) or x0 < 0.0:
        raise DomainError(f"tail threshold must be finite and >= 0, got {x0!r}")
    n = _check_count(n)
    u = _uniforms_open_closed(rng.generator(), n)
    # X = (sigma + x0) U**(-1/theta) - sigma, written so values >= x0 exactly.
    values = (p.sigma + x0) * np.expm1(-np.log(u) / p.theta) + x0
    return Sample(values, x0=x0)


def sample_gamma_mixture(p: ThetaSigma, n: int, rng: RngStream) -> Sample:
    """n draws via the gamma mixture of exponentials; same marginal law as ``sample``."""
    n = _check_count(n)
    g = rng.generator()
    z = g.gamma(shape=p.theta, scale=1.0, size=n)
    z = np.maximum(z, np.finfo(np.float64).tiny)  # guards underflow at tiny theta
    values = g.exponential(scale=1.0, size=n) * (p.sigma / z)
    return Sample(values, x0=0.0)
