"""Hot numeric kernels for the tridiagonal eigensolver.

Two interchangeable backends:

* ``numba``  -- scalar loops compiled with @njit (default when numba imports).
* ``numpy``  -- the same bisection vectorized across the eigenvalue brackets,
                so each sweep is one pass over the matrix with small-vector
                arithmetic.

Set ``PDMORSE_NO_NUMBA=1`` to force the numpy path; ``ACTIVE_BACKEND`` records
the choice.  ``benchmarks/bench_eigensolver.py`` compares the two.

The eigenvalue counter is the standard Sturm sequence on the shifted matrix
with the LAPACK-style pivot floor: a pivot is clamped to -pivmin *before* its
sign is counted, which keeps counts exact even when the shift resonates with
the diagonal.
"""
from __future__ import annotations

import os

import numpy as np

_EPS = float(np.finfo(np.float64).eps)
_TINY = float(np.finfo(np.float64).tiny)


# ---------------------------------------------------------------------------
# numpy backend
# ---------------------------------------------------------------------------

def sturm_counts_numpy(d, esq, shifts, pivmin):
    """Number of eigenvalues below each shift, vectorized over the shifts."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    count = np.zeros(shifts.shape, dtype=np.int64)
    q = d[0] - shifts
    clamp = np.abs(q) <= pivmin
    if clamp.any():
        q = np.where(clamp, -pivmin, q)
    count += q < 0.0
    for i in range(1, d.size):
        q = d[i] - shifts - esq[i - 1] / q
        clamp = np.abs(q) <= pivmin
        if clamp.any():
            q = np.where(clamp, -pivmin, q)
        count += q < 0.0
    return count


def bisect_smallest_numpy(d, esq, k, lower, upper, abstol, pivmin):
    """k smallest eigenvalues by lockstep bisection of all k brackets."""
    lo = np.full(k, lower)
    hi = np.full(k, upper)
    targets = np.arange(1, k + 1)
    while True:
        width = hi - lo
        tol = abstol + 4.0 * _EPS * np.maximum(np.abs(lo), np.abs(hi))
        if np.all(width <= tol):
            break
        mid = 0.5 * (lo + hi)
        reached = sturm_counts_numpy(d, esq, mid, pivmin) >= targets
        hi = np.where(reached, mid, hi)
        lo = np.where(reached, lo, mid)
    return 0.5 * (lo + hi)


def solve_shifted_numpy(d, e, shift, rhs):
    """Solve (T - shift*I) x = rhs for symmetric tridiagonal T=(d, e) by
    Gaussian elimination with partial pivoting (one superdiagonal of fill)."""
    n = d.size
    dm = d - shift
    du = e.astype(np.float64).copy()
    dl = e.astype(np.float64).copy()
    u2 = np.zeros(n)
    x = rhs.astype(np.float64).copy()
    for i in range(n - 1):
        if abs(dm[i]) >= abs(dl[i]):
            if dm[i] == 0.0:
                dm[i] = _TINY
            fact = dl[i] / dm[i]
            dm[i + 1] -= fact * du[i]
            x[i + 1] -= fact * x[i]
        else:
            fact = dm[i] / dl[i]
            dm[i] = dl[i]
            tmp = dm[i + 1]
            dm[i + 1] = du[i] - fact * tmp
            if i < n - 2:
                u2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            du[i] = tmp
            tmp = x[i]
            x[i] = x[i + 1]
            x[i + 1] = tmp - fact * x[i + 1]
    if dm[n - 1] == 0.0:
        dm[n - 1] = _TINY
    x[n - 1] /= dm[n - 1]
    if n > 1:
        x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dm[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - du[i] * x[i + 1] - u2[i] * x[i + 2]) / dm[i]
    return x


# ---------------------------------------------------------------------------
# numba backend (same algorithms, scalar loops)
# ---------------------------------------------------------------------------

_WANT_NUMBA = os.environ.get("PDMORSE_NO_NUMBA", "").strip().lower() not in ("1", "true", "yes")
_HAVE_NUMBA = False
if _WANT_NUMBA:
    try:
        from numba import njit

        _HAVE_NUMBA = True
    except ImportError:
        _HAVE_NUMBA = False

if _HAVE_NUMBA:

    @njit(cache=True)
    def _sturm_count_jit(d, esq, shift, pivmin):  # pragma: no cover - compiled
        count = 0
        q = d[0] - shift
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
        for i in range(1, d.size):
            q = d[i] - shift - esq[i - 1] / q
            if abs(q) <= pivmin:
                q = -pivmin
            if q < 0.0:
                count += 1
        return count

    @njit(cache=True)
    def _bisect_smallest_jit(d, esq, k, lower, upper, abstol, pivmin):  # pragma: no cover
        out = np.empty(k)
        for j in range(k):
            lo = lower
            hi = upper
            while hi - lo > abstol + 4.0 * 2.220446049250313e-16 * max(abs(lo), abs(hi)):
                mid = 0.5 * (lo + hi)
                if _sturm_count_jit(d, esq, mid, pivmin) >= j + 1:
                    hi = mid
                else:
                    lo = mid
            out[j] = 0.5 * (lo + hi)
        return out

    @njit(cache=True)
    def _solve_shifted_jit(d, e, shift, rhs):  # pragma: no cover - compiled
        n = d.size
        dm = d - shift
        du = e.copy()
        dl = e.copy()
        u2 = np.zeros(n)
        x = rhs.copy()
        tiny = 2.2250738585072014e-308
        for i in range(n - 1):
            if abs(dm[i]) >= abs(dl[i]):
                if dm[i] == 0.0:
                    dm[i] = tiny
                fact = dl[i] / dm[i]
                dm[i + 1] -= fact * du[i]
                x[i + 1] -= fact * x[i]
            else:
                fact = dm[i] / dl[i]
                dm[i] = dl[i]
                tmp = dm[i + 1]
                dm[i + 1] = du[i] - fact * tmp
                if i < n - 2:
                    u2[i] = du[i + 1]
                    du[i + 1] = -fact * du[i + 1]
                du[i] = tmp
                tmp = x[i]
                x[i] = x[i + 1]
                x[i + 1] = tmp - fact * x[i + 1]
        if dm[n - 1] == 0.0:
            dm[n - 1] = tiny
        x[n - 1] /= dm[n - 1]
        if n > 1:
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / dm[n - 2]
        for i in range(n - 3, -1, -1):
            x[i] = (x[i] - du[i] * x[i + 1] - u2[i] * x[i + 2]) / dm[i]
        return x

    def sturm_counts_numba(d, esq, shifts, pivmin):
        shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
        return np.array([_sturm_count_jit(d, esq, s, pivmin) for s in shifts], dtype=np.int64)

    def bisect_smallest_numba(d, esq, k, lower, upper, abstol, pivmin):
        return _bisect_smallest_jit(d, esq, k, lower, upper, abstol, pivmin)

    def solve_shifted_numba(d, e, shift, rhs):
        return _solve_shifted_jit(d, e, shift, rhs)

    ACTIVE_BACKEND = "numba"
    sturm_counts = sturm_counts_numba
    bisect_smallest = bisect_smallest_numba
    solve_shifted = solve_shifted_numba
else:
    ACTIVE_BACKEND = "numpy"
    sturm_counts = sturm_counts_numpy
    bisect_smallest = bisect_smallest_numpy
    solve_shifted = solve_shifted_numpy


def pivot_floor(esq) -> float:
    """LAPACK-style pivot floor for the Sturm recurrence."""
    top = float(np.max(esq)) if esq.size else 1.0
    return _TINY * max(1.0, top)
