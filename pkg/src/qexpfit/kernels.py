"""Backend selection for the hot reductions.

Two implementations exist: compiled numba loops (``_kernels_numba``) and
vectorized numpy (``_kernels_numpy``).  Without SVML the compiled loops
evaluate transcendentals one element at a time, so they win only while
call overhead dominates; numpy's SIMD ufuncs win on long vectors.  The
default "numba" backend therefore dispatches on length at the measured
crossover sizes below, which is where Monte Carlo work at small n (the
dominant fit count in replication studies) gets its speedup.

Setting ``QEXPFIT_DISABLE_NUMBA=1`` before import selects the pure-numpy
fallback; ``use_backend`` rebinds the public names in place, which is what
the benchmark script uses to compare the paths in one process.  Results
can differ between backends in the last few ulps (compensated versus
pairwise summation); each backend is individually deterministic.
"""
import os

from . import _kernels_numpy

# Crossover lengths measured on hosts without SVML (see benchmarks/).
_N_LOG1P = 384
_N_FRAC = 1024
_N_CURVE = 2048

_BACKENDS = {"numpy": _kernels_numpy}

try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
except ImportError:  # pragma: no cover - depends on environment
    _kernels_numba = None

_KERNEL_NAMES = ("sum_log1p_shifted", "sum_xfrac", "sum_xfrac_sq", "curvefit_sums")

BACKEND = None


def _make_numba_lane():
    nb = _kernels_numba
    np_ = _kernels_numpy

    def sum_log1p_shifted(x, sigma, x0):
        if x.shape[0] < _N_LOG1P:
            return nb.sum_log1p_shifted(x, sigma, x0)
        return np_.sum_log1p_shifted(x, sigma, x0)

    def sum_xfrac(x, sigma):
        if x.shape[0] < _N_FRAC:
            return nb.sum_xfrac(x, sigma)
        return np_.sum_xfrac(x, sigma)

    def sum_xfrac_sq(x, sigma):
        if x.shape[0] < _N_FRAC:
            return nb.sum_xfrac_sq(x, sigma)
        return np_.sum_xfrac_sq(x, sigma)

    def curvefit_sums(x, w, a, sigma):
        if x.shape[0] < _N_CURVE:
            return nb.curvefit_sums(x, w, a, sigma)
        return np_.curvefit_sums(x, w, a, sigma)

    return {
        "sum_log1p_shifted": sum_log1p_shifted,
        "sum_xfrac": sum_xfrac,
        "sum_xfrac_sq": sum_xfrac_sq,
        "curvefit_sums": curvefit_sums,
    }


def available_backends():
    return tuple(sorted(_BACKENDS))


def use_backend(name):
    """Bind the public kernel names to the named backend."""
    global BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; available: {available_backends()}")
    if name == "numba":
        table = _make_numba_lane()
        for fn in _KERNEL_NAMES:
            globals()[fn] = table[fn]
    else:
        impl = _BACKENDS[name]
        for fn in _KERNEL_NAMES:
            globals()[fn] = getattr(impl, fn)
    BACKEND = name
    return name


def _initial_backend():
    flag = os.environ.get("QEXPFIT_DISABLE_NUMBA", "").strip().lower()
    if flag in {"1", "true", "yes", "on"}:
        return "numpy"
    return "numba" if "numba" in _BACKENDS else "numpy"


use_backend(_initial_backend())
