"""Scalar maximization over log(sigma) shared by the likelihood and
least-squares solvers.

The strategy makes no unimodality assumption: a geometric grid is scanned
and expanded until the best point is interior (or a stated bound is hit),
then the cell around the best local maximum is refined.  Callers get the
grid back so they can certify the refined point however their objective
allows (stationarity residual for the likelihood, plain comparison for
least squares).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError

_LN10 = math.log(10.0)
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0

# Grid resolution; one decade is split into this many cells.
_POINTS_PER_DECADE = 8
# Hard stop for downward expansion, in decades below the starting location.
_MAX_DECADES_DOWN = 45


@dataclass
class GridScan:
    ln_sigmas: list
    values: list
    extras: list
    best: int
    evals: int
    hit_upper: bool


def scan_log_grid(objective, loc, bracket_factor, sigma_max):
    """Scan ``objective(ln_sigma) -> (value, extra)`` on an expanding geometric grid.

    ``loc`` anchors the initial bracket [loc/bracket_factor, loc*bracket_factor];
    upward expansion stops at ``sigma_max`` (clamped exactly), downward
    expansion stops after ``_MAX_DECADES_DOWN`` decades with an error, since
    every supported objective diverges to -inf as sigma -> 0.
    """
    step = _LN10 / _POINTS_PER_DECADE
    ln_max = math.log(sigma_max)
    ln_floor = math.log(loc) - _MAX_DECADES_DOWN * _LN10

    lo = math.log(loc) - math.log(bracket_factor)
    hi = min(math.log(loc) + math.log(bracket_factor), ln_max)

    count = max(int(math.ceil((hi - lo) / step)), 1)
    ln_sigmas = [lo + k * (hi - lo) / count for k in range(count + 1)]
    values = []
    extras = []
    for ls in ln_sigmas:
        v, e = objective(ls)
        values.append(v)
        extras.append(e)
    evals = len(ln_sigmas)

    while True:
        best = max(range(len(values)), key=values.__getitem__)
        if best == len(values) - 1 and ln_sigmas[-1] < ln_max:
            top = ln_sigmas[-1]
            new = [top + k * step for k in range(1, _POINTS_PER_DECADE + 1)]
            if new[-1] >= ln_max:
                new = [ls for ls in new if ls < ln_max] + [ln_max]
            for ls in new:
                v, e = objective(ls)
                ln_sigmas.append(ls)
                values.append(v)
                extras.append(e)
                evals += 1
        elif best == 0 and ln_sigmas[0] > ln_floor:
            bottom = ln_sigmas[0]
            new = [bottom - k * step for k in range(1, _POINTS_PER_DECADE + 1)]
            for ls in reversed(new):
                v, e = objective(ls)
                ln_sigmas.insert(0, ls)
                values.insert(0, v)
                extras.insert(0, e)
                evals += 1
        else:
            break
        if ln_sigmas[0] <= ln_floor and max(range(len(values)), key=values.__getitem__) == 0:
            raise ConvergenceError(
                "objective keeps increasing toward sigma -> 0; no stationary point found"
            )

    best = max(range(len(values)), key=values.__getitem__)
    hit_upper = best == len(values) - 1 and math.isclose(ln_sigmas[-1], ln_max)
    return GridScan(ln_sigmas, values, extras, best, evals, hit_upper)


def golden_section(objective, a, b, tol=1e-12, max_iter=200):
    """Golden-section maximization of ``objective(ln_sigma) -> (value, extra)``.

    Returns (ln_sigma, value, extra, evals) for the best point seen.
    """
    evals = 0
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, ec = objective(c)
    fd, ed = objective(d)
    evals += 2
    it = 0
    while (b - a) > tol and it < max_iter:
        if fc >= fd:
            b, d, fd, ed = d, c, fc, ec
            c = b - _INVPHI * (b - a)
            fc, ec = objective(c)
        else:
            a, c, fc, ec = c, d, fd, ed
            d = a + _INVPHI * (b - a)
            fd, ed = objective(d)
        evals += 1
        it += 1
    if fc >= fd:
        return c, fc, ec, evals
    return d, fd, ed, evals
