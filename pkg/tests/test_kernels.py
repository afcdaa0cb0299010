import os
import subprocess
import sys

import numpy as np
import pytest

from qexpfit import _kernels_numpy as knp
from qexpfit import kernels

numba_impl = pytest.importorskip("qexpfit._kernels_numba")


def _cases():
    g = np.random.default_rng(11)
    # sizes straddle the dispatch crossovers on purpose
    for n in (3, 50, 383, 385, 1500, 5000):
        x = np.ascontiguousarray(np.sort(g.exponential(50.0, n)) + 1.0)
        yield x, 80.0, 0.0
        yield x, 0.05, 0.0
        yield x, 80.0, 1.0


class TestBackendAgreement:
    def test_sum_log1p_shifted(self):
        for x, sigma, x0 in _cases():
            a = numba_impl.sum_log1p_shifted(x, sigma, x0)
            b = knp.sum_log1p_shifted(x, sigma, x0)
            assert a == pytest.approx(b, rel=1e-12)

    def test_sum_xfrac_and_sq(self):
        for x, sigma, _ in _cases():
            assert numba_impl.sum_xfrac(x, sigma) == pytest.approx(knp.sum_xfrac(x, sigma), rel=1e-12)
            assert numba_impl.sum_xfrac_sq(x, sigma) == pytest.approx(
                knp.sum_xfrac_sq(x, sigma), rel=1e-12
            )

    def test_curvefit_sums(self):
        g = np.random.default_rng(3)
        for n in (5, 700, 2500):
            x = np.ascontiguousarray(np.sort(g.exponential(10.0, n)))
            w = np.ascontiguousarray(g.integers(1, 4, n).astype(np.float64))
            a = np.ascontiguousarray(-g.uniform(0.0, 9.0, n))
            got = numba_impl.curvefit_sums(x, w, a, 25.0)
            want = knp.curvefit_sums(x, w, a, 25.0)
            for lhs, rhs in zip(got, want):
                assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_readonly_arrays_accepted(self):
        x = np.arange(1.0, 10.0)
        x.setflags(write=False)
        assert numba_impl.sum_xfrac(x, 2.0) == pytest.approx(knp.sum_xfrac(x, 2.0), rel=1e-14)


class TestBackendSelection:
    def test_use_backend_round_trip(self):
        original = kernels.BACKEND
        try:
            kernels.use_backend("numpy")
            assert kernels.BACKEND == "numpy"
            kernels.use_backend("numba")
            assert kernels.BACKEND == "numba"
        finally:
            kernels.use_backend(original)

    def test_unknown_backend_rejected(self):
        with pytest.raises(ValueError):
            kernels.use_backend("fortran")

    def test_env_flag_forces_numpy(self):
        env = dict(os.environ, QEXPFIT_DISABLE_NUMBA="1")
        out = subprocess.run(
            [sys.executable, "-c", "from qexpfit import kernels; print(kernels.BACKEND)"],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        assert out.stdout.strip() == "numpy"
