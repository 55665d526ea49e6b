"""Shared domain types for the position-dependent-mass Hamiltonian

    H = -d/dx (1/M(x)) d/dx + V_eff(x),        hbar = 2*m0 = 1,

where V_eff is the given potential plus kinetic-ordering corrections built
from the mass derivatives.  All energies are dimensionless in these units.

Mass profiles return exact analytic derivative triples (M, M', M'') because
the corrections involve M'^2/M^3, which is hostile to numerical
differentiation wherever M decays.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import DomainOverflowError, ParameterError

ArrayLike = Union[float, np.ndarray]


def _first_bad(x, values) -> float:
    """Coordinate of the first non-finite entry of ``values``."""
    xs = np.broadcast_to(np.asarray(x, dtype=float), np.shape(values))
    bad = ~np.isfinite(np.asarray(values))
    return float(xs[bad].flat[0]) if np.any(bad) else float("nan")


def _check_finite(values, x, what: str):
    if not np.all(np.isfinite(values)):
        where = _first_bad(x, values)
        raise DomainOverflowError(f"{what} is non-finite at x={where!r}", where=where)


@dataclass(frozen=True)
class AmbiguityParams:
    """Kinetic-term ordering parameters (alpha, beta).

    Observables depend on them only through the two scalar combinations
    exposed below, so parameter pairs with equal combinations produce
    bitwise-identical effective potentials.
    """

    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ParameterError("ambiguity parameters must be finite reals")

    @property
    def half_beta_plus(self) -> float:
        """Coefficient of M''/M^2 in the effective potential."""
        return 0.5 * (self.beta + 1.0)

    @property
    def cross_term(self) -> float:
        """Coefficient of M'^2/M^3 in the effective potential."""
        return self.alpha * (self.alpha + self.beta + 1.0) + self.beta + 1.0


@dataclass(frozen=True)
class ConstantMass:
    """M(x) = value, with value > 0."""

    value: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.value) and self.value > 0.0):
            raise ParameterError("constant mass must be a positive finite real")

    def evaluate(self, x: ArrayLike):
        m = np.full_like(np.asarray(x, dtype=float), self.value)
        z = np.zeros_like(m)
        return m, z, z.copy()


@dataclass(frozen=True)
class ExponentialMass:
    """M(x) = exp(-2x): vanishes to the right, blows up to the left."""

    def evaluate(self, x: ArrayLike):
        xa = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            m = np.exp(-2.0 * xa)
        _check_finite(m, xa, "exponential mass")
        return m, -2.0 * m, 4.0 * m


@dataclass(frozen=True)
class RationalMass:
    """M(x) = 1 / (1 + kappa*exp(x))^2 with kappa > 0.

    Interpolates between unit mass on the far left and an exponentially
    vanishing mass on the far right.
    """

    kappa: float

    def __post_init__(self):
        if not (np.isfinite(self.kappa) and self.kappa > 0.0):
            raise ParameterError("rational mass requires kappa > 0")

    def evaluate(self, x: ArrayLike):
        xa = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            t = self.kappa * np.exp(xa)
            w = 1.0 / (1.0 + t)
            m = w * w
            m1 = -2.0 * t * w * m
            m2 = (4.0 * t * t - 2.0 * t) * m * m
        for name, arr in (("mass", m), ("mass derivative", m1), ("mass second derivative", m2)):
            _check_finite(arr, xa, f"rational {name}")
        if np.any(m <= 0.0):
            where = float(np.asarray(xa, dtype=float).flat[int(np.argmax(m <= 0.0))])
            raise DomainOverflowError(f"rational mass underflowed to zero at x={where!r}", where=where)
        return m, m1, m2


MassProfile = Union[ConstantMass, ExponentialMass, RationalMass]


def kinetic_correction(mass: MassProfile, x: ArrayLike) -> ArrayLike:
    """Extra potential term (3/4) M'^2/M^3 - (1/2) M''/M^2 that appears when
    the first-derivative term is removed by the phi = sqrt(M) psi substitution.
    """
    m, m1, m2 = mass.evaluate(x)
    with np.errstate(over="ignore", invalid="ignore"):
        out = 0.75 * m1 * m1 / (m * m * m) - 0.5 * m2 / (m * m)
    _check_finite(out, x, "kinetic correction")
    return out if isinstance(out, np.ndarray) and np.ndim(x) else float(out)


def effective_potential(
    v: Callable[[ArrayLike], ArrayLike],
    mass: MassProfile,
    amb: AmbiguityParams,
    x: ArrayLike,
) -> ArrayLike:
    """V_eff(x) = V(x) + c1*M''/M^2 - c2*M'^2/M^3 with c1, c2 the ordering
    combinations carried by ``amb``.  Raises DomainOverflowError (with the
    offending coordinate) instead of returning infinities.
    """
    m, m1, m2 = mass.evaluate(x)
    with np.errstate(over="ignore", invalid="ignore"):
        corr = amb.half_beta_plus * m2 / (m * m) - amb.cross_term * m1 * m1 / (m * m * m)
        out = np.asarray(v(x), dtype=float) + corr
    _check_finite(out, x, "effective potential")
    return out if isinstance(out, np.ndarray) and np.ndim(x) else float(out)


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max]; the endpoints carry Dirichlet zeros and
    only the interior points enter the discretized operator."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max) and self.x_min < self.x_max):
            raise ParameterError("grid requires finite x_min < x_max")
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise ParameterError("grid requires an integer n_points >= 3")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def interior(self) -> np.ndarray:
        return self.points()[1:-1]

    def midpoints(self) -> np.ndarray:
        """Cell midpoints x_{i+1/2}, one per interval."""
        return self.points()[:-1] + 0.5 * self.h

    def refined(self) -> "Grid":
        """Same interval at half the spacing."""
        return Grid(self.x_min, self.x_max, 2 * (self.n_points - 1) + 1)
