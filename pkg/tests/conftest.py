import subprocess
import sys

import numpy as np
import pytest

import qexpfit as qf


@pytest.fixture(scope="session")
def truth():
    return qf.ThetaSigma(3.0, 200.0)


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "qexpfit", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def lognormal10_sample(n, stream, mean=1.0, sd=0.3):
    """Data with log10(1 + x) normal: close to a straight line on the
    log-log survival plot, but not a member of the fitted family."""
    g = stream.generator()
    chunks = []
    need = n
    while need > 0:
        draw = g.normal(mean, sd, size=int(need * 1.2) + 16)
        draw = draw[draw >= 0.0]
        chunks.append(draw[:need])
        need -= len(draw[:need])
    return qf.Sample(10.0 ** np.concatenate(chunks)[:n] - 1.0)


def lognormal_sample(n, stream, mean=1.0, sd=1.2):
    """Natural-log variant; heavy enough that the MLE stays interior."""
    g = stream.generator()
    chunks = []
    need = n
    while need > 0:
        draw = g.normal(mean, sd, size=int(need * 1.2) + 16)
        draw = draw[draw >= 0.0]
        chunks.append(draw[:need])
        need -= len(draw[:need])
    return qf.Sample(np.expm1(np.concatenate(chunks)[:n]))


def loglik_longdouble(s, theta, sigma):
    """Independent extended-precision log-likelihood, straight from the formula."""
    x = s.values.astype(np.longdouble)
    theta = np.longdouble(theta)
    sigma = np.longdouble(sigma)
    n = x.size
    ll = -n * np.log(sigma) + n * np.log(theta) - (theta + 1.0) * np.log1p(x / sigma).sum()
    if s.x0 > 0:
        ll += n * theta * np.log1p(np.longdouble(s.x0) / sigma)
    return ll
