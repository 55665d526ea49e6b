"""Independent finite-difference eigensolver for H = -d/dx (1/M) d/dx + V_eff.

The conservative second-order stencil samples p = 1/M at cell midpoints,
which makes the assembled tridiagonal matrix exactly symmetric.  Low-lying
eigenvalues come from Sturm-sequence counting plus bisection: unlike QL/QR
style iterations, bisection keeps absolute accuracy even when the diagonal
spans many orders of magnitude (1/M grows like exp(2x) for the decaying mass
profiles), which is exactly the regime this solver is used in.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .core import Grid, MassProfile
from .errors import DegenerateSampleError, DomainTooWideError, ParameterError


@dataclass(frozen=True)
class DiscretizedOperator:
    """Symmetric tridiagonal discretization over the interior grid points."""

    grid: Grid
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    symmetric: bool = True

    def __post_init__(self):
        if self.diagonal.ndim != 1 or self.off_diagonal.ndim != 1:
            raise ParameterError("diagonal and off-diagonal must be 1-d arrays")
        if self.off_diagonal.size != max(self.diagonal.size - 1, 0):
            raise ParameterError("off-diagonal length must be diagonal length - 1")

    @property
    def size(self) -> int:
        return self.diagonal.size

    def dense(self) -> np.ndarray:
        """Dense copy, mainly for tests."""
        a = np.diag(self.diagonal)
        idx = np.arange(self.size - 1)
        a[idx, idx + 1] = self.off_diagonal
        a[idx + 1, idx] = self.off_diagonal
        return a

    def sturm_count(self, shift: float) -> int:
        """Number of eigenvalues strictly below ``shift``."""
        esq = self.off_diagonal * self.off_diagonal
        return int(_kernels.sturm_counts(self.diagonal, esq, np.array([shift]), _kernels.pivot_floor(esq))[0])


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray]  # columns, sampled on grid.interior()
    grid: Grid
    extrapolated: bool = False


def discretize(mass: MassProfile, v_eff: Callable, grid: Grid) -> DiscretizedOperator:
    """Assemble the tridiagonal operator with Dirichlet ends.

    Row i carries (p_{i-1/2} + p_{i+1/2})/h^2 + V_eff(x_i) on the diagonal and
    -p_{i+1/2}/h^2 off it, with p = 1/M sampled at the cell midpoints.
    """
    h = grid.h
    m_mid, _, _ = mass.evaluate(grid.midpoints())
    with np.errstate(over="ignore", divide="ignore"):
        p = 1.0 / np.asarray(m_mid, dtype=float)
    if not np.all(np.isfinite(p)) or np.any(p <= 0.0):
        bad = ~(np.isfinite(p) & (p > 0.0))
        where = float(grid.midpoints()[bad][0])
        raise DomainTooWideError(f"1/M is not finite-positive at node x={where!r}", where=where)
    xi = grid.interior()
    v = np.asarray(v_eff(xi), dtype=float)
    if not np.all(np.isfinite(v)):
        where = float(xi[~np.isfinite(v)][0])
        raise DomainTooWideError(f"V_eff is non-finite at node x={where!r}", where=where)
    diag = (p[:-1] + p[1:]) / h**2 + v
    off = -p[1:-1] / h**2
    return DiscretizedOperator(grid=grid, diagonal=diag, off_diagonal=off)


def _gershgorin(d: np.ndarray, e: np.ndarray):
    r = np.zeros_like(d)
    if e.size:
        r[:-1] += np.abs(e)
        r[1:] += np.abs(e)
    return float(np.min(d - r)), float(np.max(d + r))


def eigenvalues_bisect(
    op: DiscretizedOperator,
    k: int,
    want_vectors: bool = False,
    abstol: float = 1e-12,
) -> EigenResult:
    """k smallest eigenvalues to absolute ``abstol`` by Sturm bisection,
    optionally with inverse-iteration eigenvectors normalized so that
    h * sum(v_i^2) = 1 (trapezoid weights with Dirichlet zeros at the ends).
    """
    if not 1 <= k <= op.size:
        raise ParameterError(f"k must be in [1, {op.size}], got {k}")
    d = np.ascontiguousarray(op.diagonal, dtype=np.float64)
    e = np.ascontiguousarray(op.off_diagonal, dtype=np.float64)
    esq = e * e
    pivmin = _kernels.pivot_floor(esq)
    lower, upper = _gershgorin(d, e)
    vals = np.sort(np.asarray(_kernels.bisect_smallest(d, esq, k, lower, upper, abstol, pivmin)))
    vecs = None
    if want_vectors:
        vecs = np.empty((op.size, k))
        for j in range(k):
            vecs[:, j] = _inverse_iteration(d, e, vals[j], seed=j)
        vecs /= np.sqrt(op.grid.h)
    return EigenResult(eigenvalues=vals, eigenvectors=vecs, grid=op.grid)


def _inverse_iteration(d, e, shift, seed: int, iters: int = 3) -> np.ndarray:
    rng = np.random.default_rng(1234 + seed)
    v = rng.standard_normal(d.size)
    v /= np.linalg.norm(v)
    for _ in range(iters):
        v = _kernels.solve_shifted(d, e, shift, v)
        v /= np.linalg.norm(v)
    # deterministic sign: largest-magnitude component positive
    i = int(np.argmax(np.abs(v)))
    if v[i] < 0.0:
        v = -v
    return v


def refine_richardson(
    mass: MassProfile,
    v_eff: Callable,
    grid: Grid,
    k: int,
    abstol: float = 1e-12,
) -> EigenResult:
    """Eigenvalues at h and h/2 combined as (4*fine - coarse)/3, cancelling
    the leading h^2 error of the stencil."""
    coarse = eigenvalues_bisect(discretize(mass, v_eff, grid), k, abstol=abstol)
    fine = eigenvalues_bisect(discretize(mass, v_eff, grid.refined()), k, abstol=abstol)
    vals = (4.0 * fine.eigenvalues - coarse.eigenvalues) / 3.0
    return EigenResult(eigenvalues=vals, eigenvectors=None, grid=grid, extrapolated=True)


def residual_norm(
    mass: MassProfile,
    v_eff: Callable,
    eps: float,
    phi: Callable,
    sample_points: np.ndarray,
) -> float:
    """Max relative defect of the first-order-form eigenvalue equation

        -(1/M) phi'' + (M'/M^2) phi' + (V_eff - eps) phi = 0

    over the samples.  ``phi(x)`` must return the analytic triple
    (value, first, second derivative).  The denominator is |eps|*|phi| with a
    floor at machine precision times the problem scale.
    """
    xs = np.asarray(sample_points, dtype=float)
    f, d1, d2 = phi(xs)
    f = np.asarray(f, dtype=float)
    if not np.any(f != 0.0):
        raise DegenerateSampleError("wavefunction vanishes at every sample point")
    m, m1, _ = mass.evaluate(xs)
    lhs = -d2 / m + (m1 / (m * m)) * d1 + (np.asarray(v_eff(xs), dtype=float) - eps) * f
    if not np.all(np.isfinite(lhs)):
        where = float(xs[~np.isfinite(lhs)][0])
        raise DomainTooWideError(f"residual is non-finite at x={where!r}", where=where)
    floor = np.finfo(float).eps * abs(eps) * float(np.max(np.abs(f)))
    denom = abs(eps) * np.abs(f) + (floor if floor > 0.0 else np.finfo(float).tiny)
    return float(np.max(np.abs(lhs) / denom))
