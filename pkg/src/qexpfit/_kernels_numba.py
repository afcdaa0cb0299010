"""Numba twins of the reductions in ``_kernels_numpy``.

Compiled eagerly with explicit signatures so the cache is reusable across
processes.  Sums are compensated (Kahan) so accuracy does not degrade with
sample size; fastmath stays off to keep the compensation intact.  The
array arguments are declared readonly because samples arrive as frozen
(non-writable) vectors; writable arrays convert to that signature safely.
"""
import numpy as np
from numba import njit, types

_f8 = types.float64
_vec = types.Array(_f8, 1, "C", readonly=True)


@njit(_f8(_vec, _f8, _f8), cache=True, nogil=True)
def sum_log1p_shifted(x, sigma, x0):
    denom = sigma + x0
    total = 0.0
    comp = 0.0
    for i in range(x.shape[0]):
        term = np.log1p((x[i] - x0) / denom)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@njit(_f8(_vec, _f8), cache=True, nogil=True)
def sum_xfrac(x, sigma):
    total = 0.0
    comp = 0.0
    for i in range(x.shape[0]):
        term = x[i] / (sigma + x[i])
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@njit(_f8(_vec, _f8), cache=True, nogil=True)
def sum_xfrac_sq(x, sigma):
    total = 0.0
    comp = 0.0
    for i in range(x.shape[0]):
        frac = x[i] / (sigma + x[i])
        term = frac * (2.0 - frac)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@njit(types.UniTuple(_f8, 3)(_vec, _vec, _vec, _f8), cache=True, nogil=True)
def curvefit_sums(x, w, a, sigma):
    sab = 0.0
    sbb = 0.0
    saa = 0.0
    for i in range(x.shape[0]):
        b = np.log1p(x[i] / sigma)
        sab += w[i] * a[i] * b
        sbb += w[i] * b * b
        saa += w[i] * a[i] * a[i]
    return sab, sbb, saa
