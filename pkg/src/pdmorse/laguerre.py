"""Generalized Laguerre polynomials L_n^(a)(y) for real upper index a > -1.

Evaluation runs the three-term recurrence upward in degree, which is stable
for y >= 0.  The explicit finite-sum series cancels badly at moderate y and
is kept only as an oracle in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree and upper index of L_n^(a); a > -1 keeps the weight normalizable."""

    degree: int
    upper_index: float

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ParameterError("Laguerre degree must be a non-negative integer")
        if not (np.isfinite(self.upper_index) and self.upper_index > -1.0):
            raise ParameterError("Laguerre upper index must satisfy a > -1")


def laguerre(spec: LaguerreSpec, y):
    """Value of L_n^(a)(y) on y >= 0 by upward recurrence in the degree."""
    ya = np.asarray(y, dtype=float)
    if np.any(ya < 0.0):
        raise ParameterError("laguerre requires y >= 0")
    out = _recurrence(spec.degree, spec.upper_index, ya)
    return out if np.ndim(y) else float(out)


def laguerre_derivative(spec: LaguerreSpec, y, order: int = 1):
    """d^k/dy^k L_n^(a)(y) = (-1)^k L_{n-k}^(a+k)(y), zero once k exceeds n."""
    if order < 0:
        raise ParameterError("derivative order must be non-negative")
    ya = np.asarray(y, dtype=float)
    if np.any(ya < 0.0):
        raise ParameterError("laguerre requires y >= 0")
    n, a = spec.degree, spec.upper_index
    if order > n:
        out = np.zeros_like(ya)
    else:
        sign = -1.0 if order % 2 else 1.0
        out = sign * _recurrence(n - order, a + order, ya)
    return out if np.ndim(y) else float(out)


def _recurrence(n: int, a: float, y: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.ones_like(y)
    prev = np.ones_like(y)
    cur = 1.0 + a - y
    for k in range(1, n):
        prev, cur = cur, ((2.0 * k + 1.0 + a - y) * cur - (k + a) * prev) / (k + 1.0)
    return cur
