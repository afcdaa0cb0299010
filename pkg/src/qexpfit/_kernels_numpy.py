"""Pure-numpy implementations of the hot reductions.

These are the fallback path; the numba twins in ``_kernels_numba`` are
preferred when importable (see ``kernels``).  Every function takes a
contiguous float64 data vector and scalar parameters and returns floats.
"""
import numpy as np


def sum_log1p_shifted(x, sigma, x0):
    """Sum of log1p((x_i - x0) / (sigma + x0)).

    With x0 = 0 this is sum log(1 + x_i/sigma); with x0 > 0 it is the
    tail-relative sum log((1 + x_i/sigma) / (1 + x0/sigma)) evaluated
    without cancellation.
    """
    return float(np.log1p((x - x0) / (sigma + x0)).sum())


def sum_xfrac(x, sigma):
    """Sum of x_i / (sigma + x_i)."""
    return float((x / (sigma + x)).sum())


def sum_xfrac_sq(x, sigma):
    """Sum of t_i * (2 - t_i) with t_i = x_i / (sigma + x_i)."""
    t = x / (sigma + x)
    return float((t * (2.0 - t)).sum())


def curvefit_sums(x, w, a, sigma):
    """Weighted sums for the log-survival least-squares profile.

    Returns (sum w*a*b, sum w*b*b, sum w*a*a) with b = log1p(x/sigma).
    """
    b = np.log1p(x / sigma)
    return (
        float((w * a * b).sum()),
        float((w * b * b).sum()),
        float((w * a * a).sum()),
    )
