"""Parameter systems for the q-exponential family and the bijection between them.

The distribution is used throughout in the shape/scale form, where the
survival function is ``(1 + x/sigma)**(-theta)`` on ``x >= 0``.  The original
(q, kappa) convention maps onto it exactly:

    theta = 1 / (q - 1),   sigma = kappa / (q - 1)
    q     = 1 + 1 / theta, kappa = sigma / theta

Only the heavy-tailed branch q > 1 (equivalently theta > 0) is supported;
for q <= 1 the survival curve above is not a distribution on [0, inf) and
construction fails loudly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterError


@dataclass(frozen=True)
class ThetaSigma:
    """Shape ``theta`` and scale ``sigma`` (same units as the data), both > 0."""

    theta: float
    sigma: float

    def __post_init__(self):
        theta = float(self.theta)
        sigma = float(self.sigma)
        if not (math.isfinite(theta) and math.isfinite(sigma)):
            raise ParameterError(f"parameters must be finite, got theta={theta!r}, sigma={sigma!r}")
        if theta <= 0.0 or sigma <= 0.0:
            raise ParameterError(f"theta and sigma must be > 0, got theta={theta!r}, sigma={sigma!r}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "sigma", sigma)


@dataclass(frozen=True)
class QKappa:
    """Original entropy-index convention: q in (1, inf), kappa > 0."""

    q: float
    kappa: float

    def __post_init__(self):
        q = float(self.q)
        kappa = float(self.kappa)
        if not (math.isfinite(q) and math.isfinite(kappa)):
            raise ParameterError(f"parameters must be finite, got q={q!r}, kappa={kappa!r}")
        if q <= 1.0:
            raise ParameterError(
                f"q={q!r} is outside the supported q > 1 branch "
                "(the bounded-support q <= 1 family is not implemented)"
            )
        if kappa <= 0.0:
            raise ParameterError(f"kappa must be > 0, got {kappa!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "kappa", kappa)


def to_theta_sigma(p: QKappa) -> ThetaSigma:
    """Convert (q, kappa) to the shape/scale system."""
    d = p.q - 1.0
    return ThetaSigma(theta=1.0 / d, sigma=p.kappa / d)


def to_q_kappa(p: ThetaSigma) -> QKappa:
    """Convert shape/scale back to the (q, kappa) system."""
    return QKappa(q=1.0 + 1.0 / p.theta, kappa=p.sigma / p.theta)
