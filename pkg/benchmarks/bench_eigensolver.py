"""Benchmark the Sturm-bisection kernel: numba backend vs pure-numpy fallback.

Times the k-lowest-eigenvalue extraction on real oracle matrices (the curved
oscillator in its weighted picture).  Run as

    python benchmarks/bench_eigensolver.py

The package-level backend is chosen at import time via OSCOUL_DISABLE_NUMBA;
here both implementations are invoked directly so one process compares them.
"""

import time

import numpy as np

from oscoul import kernels, oracle
from oscoul.models import NonlinearOscillator


def solve_with(fn, diag, off2, k, pivmin, lo0, hi0):
    return fn(diag, off2, k, 1e-12, pivmin, lo0, hi0)


def bench(fn, args, repeats=5):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = solve_with(fn, *args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    model = NonlinearOscillator(d=2, lam=-0.1, beta=1.0)
    problem = oracle.build_problem(model, 1.0, n_states=3)
    print(f"problem: {problem.label}, domain {problem.domain}")
    print(f"{'N':>6} {'k':>2} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>8}")
    for N in (512, 2048, 8192):
        op = oracle.discretize(problem, N)
        diag, off2, pivmin, lo0, hi0 = kernels._prepare(op.diag, op.off)
        k = 3
        args = (diag, off2, k, pivmin, lo0, hi0)
        if kernels.USE_NUMBA:
            solve_with(kernels._BISECT, *args)  # compile before timing
            t_numba, ev_numba = bench(kernels._BISECT, args)
        else:
            t_numba, ev_numba = np.nan, None
        t_numpy, ev_numpy = bench(kernels._bisect_numpy, args)
        if ev_numba is not None:
            scale = max(abs(ev_numpy[0]), 1.0)
            assert np.allclose(ev_numba, ev_numpy, rtol=1e-10, atol=1e-11 * scale)
        speedup = t_numpy / t_numba if ev_numba is not None else np.nan
        print(f"{N:>6} {k:>2} {1e3 * t_numba:>12.3f} {1e3 * t_numpy:>12.3f} {speedup:>8.1f}")
    if not kernels.USE_NUMBA:
        print("numba backend unavailable or disabled (OSCOUL_DISABLE_NUMBA)")


if __name__ == "__main__":
    main()
