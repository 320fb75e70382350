"""Symmetric-tridiagonal eigenvalue extraction by Sturm-sequence bisection.

The negative-pivot count of the shifted LDL^T factorization equals the number
of eigenvalues below the shift; bisecting on that count extracts the k lowest
eigenvalues in O(k N) per sweep.  The count sweep is the hot loop of the whole
oracle and is compiled with numba when available.  Set
``OSCOUL_DISABLE_NUMBA=1`` to force the pure-numpy path, which runs the same
bracketing logic with all k shifts batched per sweep.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

_DISABLED = os.environ.get("OSCOUL_DISABLE_NUMBA", "").lower() in ("1", "true", "yes")
USE_NUMBA = _HAVE_NUMBA and not _DISABLED

_MAX_SWEEPS = 256

__all__ = ["backend", "count_below", "lowest_eigenvalues_tridiag"]


def backend() -> str:
    """Name of the active kernel backend, "numba" or "numpy"."""
    return "numba" if USE_NUMBA else "numpy"


def _count_src(diag, off2, x, pivmin):
    # pivots of (T - x I) = L D L^T; negatives count eigenvalues < x
    cnt = 0
    q = diag[0] - x
    if q < 0.0:
        cnt = 1
    for i in range(1, diag.shape[0]):
        if -pivmin < q < pivmin:
            q = -pivmin
        q = diag[i] - x - off2[i - 1] / q
        if q < 0.0:
            cnt += 1
    return cnt


def _bisect_src(diag, off2, k, rel_tol, pivmin, lo0, hi0):
    out = np.empty(k)
    for j in range(k):
        lo = lo0
        hi = hi0
        for _ in range(_MAX_SWEEPS):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if hi - lo <= rel_tol * max(abs(lo), abs(hi)):
                break
            if _COUNT(diag, off2, mid, pivmin) >= j + 1:
                hi = mid
            else:
                lo = mid
        out[j] = 0.5 * (lo + hi)
    return out


if USE_NUMBA:
    _COUNT = njit("int64(float64[::1], float64[::1], float64, float64)", cache=True)(
        _count_src
    )
    _BISECT = njit(
        "float64[::1](float64[::1], float64[::1], int64, float64, float64, float64, float64)",
        cache=True,
    )(_bisect_src)
else:  # pragma: no cover - exercised via the env flag in tests/benchmarks
    _COUNT = None
    _BISECT = None


def _count_numpy(diag, off2, shifts, pivmin):
    q = diag[0] - shifts
    cnt = (q < 0.0).astype(np.int64)
    for i in range(1, diag.shape[0]):
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        q = diag[i] - shifts - off2[i - 1] / q
        cnt += q < 0.0
    return cnt


def _bisect_numpy(diag, off2, k, rel_tol, pivmin, lo0, hi0):
    lo = np.full(k, lo0)
    hi = np.full(k, hi0)
    targets = np.arange(1, k + 1)
    for _ in range(_MAX_SWEEPS):
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        active &= (hi - lo) > rel_tol * np.maximum(np.abs(lo), np.abs(hi))
        if not np.any(active):
            break
        cnt = _count_numpy(diag, off2, mid, pivmin)
        pull_down = cnt >= targets
        hi = np.where(active & pull_down, mid, hi)
        lo = np.where(active & ~pull_down, mid, lo)
    return 0.5 * (lo + hi)


def _prepare(diag, off):
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    if diag.ndim != 1 or off.ndim != 1 or off.size != diag.size - 1:
        raise ValueError("need a length-N diagonal and a length-(N-1) off-diagonal")
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
        raise ValueError("matrix entries must be finite")
    off2 = off * off
    pivmin = 2.3e-308 * max(1.0, float(np.max(off2, initial=0.0)))
    radius = np.zeros_like(diag)
    absoff = np.abs(off)
    radius[:-1] += absoff
    radius[1:] += absoff
    lo0 = float(np.min(diag - radius))
    hi0 = float(np.max(diag + radius))
    pad = 1e-12 * max(1.0, abs(lo0), abs(hi0))
    return diag, off2, pivmin, lo0 - pad, hi0 + pad


def count_below(diag, off, x) -> int:
    """Number of eigenvalues of the symmetric tridiagonal matrix below x."""
    diag, off2, pivmin, _, _ = _prepare(diag, off)
    if USE_NUMBA:
        return int(_COUNT(diag, off2, float(x), pivmin))
    return int(_count_numpy(diag, off2, np.asarray([float(x)]), pivmin)[0])


def lowest_eigenvalues_tridiag(diag, off, k: int, rel_tol: float = 1e-12) -> np.ndarray:
    """The k smallest eigenvalues, ascending, each bisected to rel_tol (or ulp)."""
    diag, off2, pivmin, lo0, hi0 = _prepare(diag, off)
    if not 1 <= k <= diag.size:
        raise ValueError(f"k must lie in [1, {diag.size}], got {k}")
    if USE_NUMBA:
        return _BISECT(diag, off2, k, float(rel_tol), pivmin, lo0, hi0)
    return _bisect_numpy(diag, off2, k, float(rel_tol), pivmin, lo0, hi0)
