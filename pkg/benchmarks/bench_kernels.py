"""Benchmark the numba and numpy kernel backends.

Times the three hot reductions and a full joint fit at several sample
sizes on three lanes:

* njit     the raw compiled loops
* numpy    the vectorized fallback (QEXPFIT_DISABLE_NUMBA=1 path)
* blend    what the default "numba" backend actually ships: compiled
           loops below the measured crossover sizes, numpy above

Run:  python benchmarks/bench_kernels.py [--sizes 100,1000,10000,100000]
"""
import argparse
from timeit import default_timer as timer

import numpy as np

from qexpfit import RngStream, ThetaSigma, kernels, mle_joint, sample
from qexpfit import _kernels_numba as knb
from qexpfit import _kernels_numpy as knp


def _best_of(fn, repeats=5, number=50):
    best = float("inf")
    for _ in range(repeats):
        t0 = timer()
        for _ in range(number):
            fn()
        best = min(best, (timer() - t0) / number)
    return best


def bench_kernels(sizes):
    print("== kernel: sum_log1p_shifted (seconds per call) ==")
    print(f"{'n':>8} {'njit':>12} {'numpy':>12} {'blend':>12} {'numpy/njit':>11}")
    blend = kernels
    for n in sizes:
        x = np.ascontiguousarray(np.random.default_rng(0).exponential(200.0, n))
        knb.sum_log1p_shifted(x, 200.0, 0.0)  # warm the JIT
        tb = _best_of(lambda: knb.sum_log1p_shifted(x, 200.0, 0.0))
        tp = _best_of(lambda: knp.sum_log1p_shifted(x, 200.0, 0.0))
        tl = _best_of(lambda: blend.sum_log1p_shifted(x, 200.0, 0.0))
        print(f"{n:>8} {tb:>12.3e} {tp:>12.3e} {tl:>12.3e} {tp / tb:>11.2f}")


def bench_fits(sizes):
    print("\n== full joint MLE fit (seconds per fit) ==")
    print(f"{'n':>8} {'numba lane':>12} {'numpy lane':>12} {'speedup':>9}")
    truth = ThetaSigma(3.0, 200.0)
    for n in sizes:
        s = sample(truth, n, RngStream(1))
        results = {}
        for backend in ("numba", "numpy"):
            kernels.use_backend(backend)
            mle_joint(s)  # warm
            results[backend] = _best_of(lambda: mle_joint(s), repeats=3, number=10)
        kernels.use_backend("numba")
        print(
            f"{n:>8} {results['numba']:>12.3e} {results['numpy']:>12.3e} "
            f"{results['numpy'] / results['numba']:>9.2f}x"
        )


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="100,1000,10000,100000")
    args = parser.parse_args()
    sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]

    print(f"active backend: {kernels.BACKEND}")
    bench_kernels(sizes)
    bench_fits(sizes)

    # agreement check between the lanes
    x = np.ascontiguousarray(np.random.default_rng(3).exponential(200.0, 4096))
    a = knb.sum_log1p_shifted(x, 200.0, 0.0)
    b = knp.sum_log1p_shifted(x, 200.0, 0.0)
    print(f"\nbackend agreement: |numba - numpy| / |numpy| = {abs(a - b) / abs(b):.3e}")


if __name__ == "__main__":
    main()
