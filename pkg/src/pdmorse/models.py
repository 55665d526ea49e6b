"""Closed-form spectra and wavefunctions for the three solvable
position-dependent-mass configurations:

* exponential mass  M = exp(-2x) with a rising Morse potential, solvable one
  level at a time because the quadratic coupling v0 is tied to the level;
* rational mass  M = (1 + kappa*exp(x))^-2, which keeps the effective
  potential Morse-like with rescaled couplings and yields a full ladder of
  eigenvalues plus a closed-form ground state;
* the half-line Coulomb problem obtained from the rational model through the
  x = log(r) map, described by modified (Z, l, lambda) parameters.

Wavefunctions are returned with unit L2 norm; the paper-level proportionality
constants are fixed by quadrature.  All models are immutable after
construction and every evaluation is a pure function.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.integrate import quad

from .core import AmbiguityParams, ConstantMass, ExponentialMass, MassProfile, RationalMass, effective_potential
from .errors import (
    ComplexAngularMomentumError,
    ConsistencyError,
    InvalidLevelError,
    NoBoundStateError,
    NonNormalizableError,
    ParameterError,
)
from .laguerre import LaguerreSpec, laguerre, laguerre_derivative

_BOUNDARY_TOL = 1e-10  # wavefunction and mass-decay diagnostic at a domain cut


@dataclass(frozen=True)
class MorseParams:
    """Couplings of the rising Morse potential v0*e^{2x} - B(2A+1)*e^{x}."""

    v0: float
    a_coupling: float
    b_coupling: float

    def __post_init__(self):
        if not (np.isfinite(self.b_coupling) and self.b_coupling > 0.0):
            raise ParameterError("Morse coupling B must be positive")
        if not (np.isfinite(self.v0) and np.isfinite(self.a_coupling)):
            raise ParameterError("Morse couplings must be finite")

    def potential(self, x):
        a, b = self.a_coupling, self.b_coupling
        ex = np.exp(np.asarray(x, dtype=float))
        return self.v0 * ex * ex - b * (2.0 * a + 1.0) * ex

    def companion_well(self, x):
        """Standard decaying-form well B^2 e^{-2x} - B(2A+1) e^{-x}, the
        constant-mass problem the exponential-mass model maps onto."""
        a, b = self.a_coupling, self.b_coupling
        ex = np.exp(-np.asarray(x, dtype=float))
        return b * b * ex * ex - b * (2.0 * a + 1.0) * ex


def count_sign_changes(values, rel_floor: float = 1e-9) -> int:
    """Interior sign changes of a sampled function, ignoring samples below
    ``rel_floor`` times the max amplitude (tail noise is not a node)."""
    v = np.asarray(values, dtype=float)
    top = float(np.max(np.abs(v))) if v.size else 0.0
    if top == 0.0:
        return 0
    s = np.sign(v[np.abs(v) > rel_floor * top])
    return int(np.sum(s[1:] * s[:-1] < 0))


def _quad_norm(f, lo, hi, points=None) -> float:
    pts = None
    if points is not None:
        pts = sorted(p for p in points if lo < p < hi)
        pts = pts or None
    val, _ = quad(lambda t: float(f(t)) ** 2, lo, hi, points=pts, limit=300, epsabs=1e-13, epsrel=1e-11)
    return math.sqrt(val)


# ---------------------------------------------------------------------------
# exponential-mass model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpMassMorseModel:
    """One solvable level of the exponential-mass Morse problem.

    The quadratic coupling is pinned to the level,
    v0 = (A - n)^2 + 4a(a+b+1) + 2b + 1 in the ordering parameters (a, b),
    so each level index is its own potential configuration.  The model's
    eigenvalue is -B^2 independent of n; the constant-mass companion well has
    the familiar -(A-n)^2 at the same level and is reported as a diagnostic.
    """

    a_coupling: float
    b_coupling: float
    level: int
    amb: AmbiguityParams = AmbiguityParams()

    def __post_init__(self):
        if not (np.isfinite(self.a_coupling) and np.isfinite(self.b_coupling)):
            raise ParameterError("couplings must be finite")
        if self.b_coupling <= 0.0:
            raise ParameterError("coupling B must be positive")
        if int(self.level) != self.level or self.level < 0:
            raise ParameterError("level must be a non-negative integer")
        if not self.level < self.a_coupling:
            raise NoBoundStateError(
                f"level n={self.level} requires n < A, got A={self.a_coupling}"
            )

    @property
    def v0(self) -> float:
        a, b = self.amb.alpha, self.amb.beta
        return (self.a_coupling - self.level) ** 2 + 4.0 * a * (a + b + 1.0) + 2.0 * b + 1.0

    @property
    def morse_params(self) -> MorseParams:
        return MorseParams(self.v0, self.a_coupling, self.b_coupling)

    @property
    def mass(self) -> MassProfile:
        return ExponentialMass()

    @property
    def energy(self) -> float:
        return -self.b_coupling**2

    @property
    def companion_energy(self) -> float:
        return -((self.a_coupling - self.level) ** 2)

    def potential(self, x):
        return self.morse_params.potential(x)

    def v_eff(self, x):
        return effective_potential(self.potential, self.mass, self.amb, x)

    def _raw_triple(self, x):
        """Unnormalized phi = y^p e^{-y/2} L_n^{(2A-2n)}(y) with y = 2B e^{-x}
        and p = A+1-n, plus its two x-derivatives via the chain rule."""
        n = self.level
        p = self.a_coupling + 1.0 - n
        a_idx = 2.0 * (self.a_coupling - n)
        y = 2.0 * self.b_coupling * np.exp(-np.asarray(x, dtype=float))
        spec = LaguerreSpec(n, a_idx)
        lag = laguerre(spec, y)
        lag1 = laguerre_derivative(spec, y, 1)
        lag2 = laguerre_derivative(spec, y, 2)
        with np.errstate(under="ignore"):
            w = np.exp(-0.5 * y)
            yp = y**p
            f = yp * w * lag
            fy = w * (p * y ** (p - 1.0) * lag - 0.5 * yp * lag + yp * lag1)
            fyy = w * (
                p * (p - 1.0) * y ** (p - 2.0) * lag
                + 0.25 * yp * lag
                + yp * lag2
                - p * y ** (p - 1.0) * lag
                + 2.0 * p * y ** (p - 1.0) * lag1
                - yp * lag1
            )
        # d/dx = -y d/dy
        return f, -y * fy, y * fy + y * y * fyy

    @cached_property
    def _norm_domain(self):
        n = self.level
        p = self.a_coupling + 1.0 - n
        x_peak = math.log(self.b_coupling / p)
        lo, hi = min(-6.0, x_peak - 4.0), max(10.0, x_peak + 4.0)
        raw = lambda t: self._raw_triple(t)[0]
        for _ in range(80):
            norm = _quad_norm(raw, lo, hi, points=(x_peak - 2.0, x_peak, x_peak + 2.0))
            grow_lo = _boundary_exceeds(raw(lo) / norm, self.mass, lo)
            grow_hi = _boundary_exceeds(raw(hi) / norm, self.mass, hi)
            if not (grow_lo or grow_hi):
                return norm, (lo, hi)
            lo -= 2.0 * grow_lo
            hi += 2.0 * grow_hi
        return norm, (lo, hi)

    @property
    def domain(self):
        """Truncation interval on which tails are below the boundary tolerance."""
        return self._norm_domain[1]

    def wavefunction(self, x):
        return self._raw_triple(x)[0] / self._norm_domain[0]

    def wavefunction_derivatives(self, x):
        norm = self._norm_domain[0]
        f, d1, d2 = self._raw_triple(x)
        return f / norm, d1 / norm, d2 / norm

    def tail_diagnostic(self, x):
        """|phi|^2 / sqrt(M): must vanish at the right edge where M vanishes."""
        m, _, _ = self.mass.evaluate(x)
        return self.wavefunction(x) ** 2 / np.sqrt(m)


def _boundary_exceeds(norm_value, mass: MassProfile, x: float) -> bool:
    m, _, _ = mass.evaluate(x)
    diag = float(norm_value) ** 2 / math.sqrt(float(m))
    return abs(float(norm_value)) > _BOUNDARY_TOL or diag > _BOUNDARY_TOL


# ---------------------------------------------------------------------------
# rational-mass model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalMassMorseModel:
    """Morse problem with M = (1 + kappa*e^x)^-2.

    The effective potential stays Morse-shaped with rescaled couplings
    B'^2 = B^2 - 2[2a(a+b+1)+b+1]*kappa^2 and
    B'(2A'+1) = B(2A+1) + (b+1)*kappa, and the ladder

        eps_n = -(1/4) [ (2B'(2A'+1) - (2n+1)D - 2(n^2+n+1)kappa)
                         / (D + (2n+1)kappa) ]^2,    D = 2 sqrt(B'^2+kappa^2).

    kappa = 0 is accepted as the constant-mass limit so that the Coulomb map
    can reproduce the hydrogen case; the rational mass profile itself still
    requires kappa > 0.
    """

    a_coupling: float
    b_coupling: float
    kappa: float
    amb: AmbiguityParams = AmbiguityParams()

    def __post_init__(self):
        if not (np.isfinite(self.a_coupling) and np.isfinite(self.b_coupling) and np.isfinite(self.kappa)):
            raise ParameterError("couplings must be finite")
        if self.b_coupling <= 0.0:
            raise ParameterError("coupling B must be positive")
        if self.kappa < 0.0:
            raise ParameterError("kappa must be non-negative")
        if self.b_prime_sq <= 0.0:
            raise ParameterError(
                "B'^2 = B^2 - 2[2a(a+b+1)+b+1]*kappa^2 must stay positive; "
                f"got {self.b_prime_sq}"
            )

    @property
    def b_prime_sq(self) -> float:
        a, b = self.amb.alpha, self.amb.beta
        scale = 2.0 * a * (a + b + 1.0) + b + 1.0
        return self.b_coupling**2 - 2.0 * scale * self.kappa**2

    @property
    def b_prime(self) -> float:
        return math.sqrt(self.b_prime_sq)

    @property
    def linear_coupling(self) -> float:
        """B'(2A'+1), the rescaled linear Morse coupling."""
        return self.b_coupling * (2.0 * self.a_coupling + 1.0) + (self.amb.beta + 1.0) * self.kappa

    @property
    def a_prime(self) -> float:
        return 0.5 * (self.linear_coupling / self.b_prime - 1.0)

    @property
    def delta(self) -> float:
        return 2.0 * math.sqrt(self.b_prime_sq + self.kappa**2)

    @property
    def lambda_gs(self) -> float:
        """Exponent parameter of the ground state; always negative."""
        return -0.5 * (self.delta + self.kappa)

    @property
    def mu_gs(self) -> float:
        """Left-tail decay rate of the ground state; must be positive for a
        normalizable state.  Satisfies eps_0 = -mu^2."""
        return 0.5 * ((2.0 * self.linear_coupling - self.kappa) / (self.delta + self.kappa) - 1.0)

    @property
    def mass(self) -> MassProfile:
        return RationalMass(self.kappa) if self.kappa > 0.0 else ConstantMass(1.0)

    def potential(self, x):
        b = self.b_coupling
        ex = np.exp(np.asarray(x, dtype=float))
        return b * b * ex * ex - b * (2.0 * self.a_coupling + 1.0) * ex

    def v_eff(self, x):
        return effective_potential(self.potential, self.mass, self.amb, x)

    def v_eff_closed(self, x):
        """Rescaled Morse form B'^2 e^{2x} - B'(2A'+1) e^{x}; identical to
        v_eff, kept as an independent route for cross-checks."""
        ex = np.exp(np.asarray(x, dtype=float))
        return self.b_prime_sq * ex * ex - self.linear_coupling * ex

    def level_numerator(self, n: int) -> float:
        return 2.0 * self.linear_coupling - ((2 * n + 1) * self.delta + 2.0 * (n * n + n + 1) * self.kappa)

    def is_valid_level(self, n: int) -> bool:
        return int(n) == n and n >= 0 and self.level_numerator(int(n)) > 0.0

    def energy(self, n: int) -> float:
        """Ladder eigenvalue; the ladder ends where the numerator of the
        bracketed ratio turns non-positive (the squared form would otherwise
        fabricate spurious negative values)."""
        if int(n) != n or n < 0:
            raise ParameterError("level must be a non-negative integer")
        num = self.level_numerator(int(n))
        if num <= 0.0:
            raise InvalidLevelError(f"closed-form ladder ends below level n={n}")
        eps = -0.25 * (num / (self.delta + (2 * n + 1) * self.kappa)) ** 2
        if eps >= 0.0:
            raise InvalidLevelError(f"level n={n} is not a bound state")
        return eps

    def _raw_ground_triple(self, x):
        if self.mu_gs <= 0.0:
            raise NonNormalizableError("ground state requires mu > 0")
        mu = self.mu_gs
        xa = np.asarray(x, dtype=float)
        if self.kappa == 0.0:
            # constant-mass limit: plain Morse ground state in rising form
            y = 2.0 * self.b_coupling * np.exp(xa)
            with np.errstate(under="ignore"):
                f = np.exp(mu * xa - 0.5 * y)
            g = mu - 0.5 * y
            return f, f * g, f * (g * g - 0.5 * y)
        q = self.lambda_gs / self.kappa - mu - 0.5
        with np.errstate(over="ignore", under="ignore"):
            t = self.kappa * np.exp(xa)
            f = np.exp(q * np.log1p(t) + mu * xa)
            frac = 1.0 - 1.0 / (1.0 + t)  # t/(1+t), safe as t -> inf
            g = mu + q * frac
            d1 = f * g
            d2 = f * (g * g + q * frac / (1.0 + t))
        return f, d1, d2

    @cached_property
    def _norm_domain(self):
        lo, hi = self.suggested_domain(0)
        raw = lambda t: self._raw_ground_triple(t)[0]
        for _ in range(80):
            norm = _quad_norm(raw, lo, hi)
            grow_lo = _boundary_exceeds(raw(lo) / norm, self.mass, lo)
            grow_hi = _boundary_exceeds(raw(hi) / norm, self.mass, hi)
            if not (grow_lo or grow_hi):
                return norm, (lo, hi)
            lo -= 2.0 * grow_lo
            hi += 2.0 * grow_hi
        return norm, (lo, hi)

    @property
    def domain(self):
        return self._norm_domain[1]

    def ground_wavefunction(self, x):
        return self._raw_ground_triple(x)[0] / self._norm_domain[0]

    def ground_wavefunction_derivatives(self, x):
        norm = self._norm_domain[0]
        f, d1, d2 = self._raw_ground_triple(x)
        return f / norm, d1 / norm, d2 / norm

    def tail_diagnostic(self, x):
        m, _, _ = self.mass.evaluate(x)
        return self.ground_wavefunction(x) ** 2 / np.sqrt(m)

    def suggested_domain(self, n: int):
        """Truncation interval wide enough that level-n tails are below the
        boundary tolerance, from the analytic decay rates: exp(sqrt(-eps_n) x)
        on the left, exp(-(D/(2 kappa) + 1) x) on the right for kappa > 0 and
        a super-exponential wall for kappa = 0."""
        margin = -math.log(_BOUNDARY_TOL)  # ~23
        left_rate = math.sqrt(-self.energy(n))
        lo = min(-12.0, -margin / left_rate - 2.0)
        if self.kappa > 0.0:
            right_rate = self.delta / (2.0 * self.kappa) + 1.0
            hi = max(12.0, margin / right_rate + 2.0)
        else:
            hi = max(6.0, math.log(margin / self.b_coupling) + 2.0)
        return lo, hi


# ---------------------------------------------------------------------------
# Coulomb map parameters and ground state
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoulombParams:
    """Modified Coulomb parameters (Z, l, lambda) produced by the log map.

    Satisfy 2Z = B'(2A'+1) - kappa/2, l(l+1) = -eps_n - 1/4 and
    lambda = -B'^2 - kappa^2; at kappa = 0 they reduce to the hydrogen values
    Z = B(A+1/2), l = A - n - 1/2, lambda = -Z^2/(n+l+1)^2.
    """

    z_charge: float
    l_quantum: float
    lambda_nl: float
    kappa: float

    def __post_init__(self):
        if self.kappa < 0.0:
            raise ParameterError("kappa must be non-negative")
        for v in (self.z_charge, self.l_quantum, self.lambda_nl):
            if not np.isfinite(v):
                raise ParameterError("Coulomb parameters must be finite")


def coulomb_parameters(model: RationalMassMorseModel, n: int) -> CoulombParams:
    """Map level n of the rational-mass Morse ladder to its Coulomb data.

    The returned l and lambda come from their explicit closed forms; both are
    cross-checked against the defining identities l(l+1) = -eps_n - 1/4 and
    lambda = -B'^2 - kappa^2 to 1e-10 before returning.
    """
    eps = model.energy(n)
    if eps > -0.25:
        raise ComplexAngularMomentumError(
            f"level n={n} has eps={eps} > -1/4, so l would be complex"
        )
    kap = model.kappa
    delta = model.delta
    lin = model.linear_coupling
    z = model.b_prime * (model.a_prime + 0.5) - kap / 4.0
    l = (2.0 * lin - (2.0 * (n + 1) * delta + (2.0 * n * n + 4.0 * n + 3.0) * kap)) / (
        2.0 * (delta + (2 * n + 1) * kap)
    )
    lam = -(((2.0 * z - (n * n + (l + 1.0) * (2 * n + 1)) * kap) / (2.0 * (n + l + 1.0))) ** 2)
    scale = max(1.0, abs(eps), abs(lam))
    if abs(l * (l + 1.0) + eps + 0.25) > 1e-10 * scale:
        raise ConsistencyError("l(l+1) does not match -eps - 1/4")
    if abs(lam - (-model.b_prime_sq - kap * kap)) > 1e-10 * scale:
        raise ConsistencyError("lambda routes disagree")
    return CoulombParams(z_charge=z, l_quantum=l, lambda_nl=lam, kappa=kap)


class CoulombGroundState:
    """Normalized nodeless radial solution xi(r) on (0, infinity).

    Two equivalent closed forms are exposed: ``direct`` uses (Z, l),
    xi ~ r^{l+1} (1+kappa r)^{-(Z/((l+1)kappa) + l + 1)}, while ``mapped``
    uses the Morse ground-state exponents, xi ~ r^{mu+1/2} (1+kappa r)^{lam/kappa - mu - 1/2}.
    At kappa = 0 both collapse to r^{l+1} exp(-Z r / (l+1)).
    """

    def __init__(self, cp: CoulombParams, model: RationalMassMorseModel, form: str = "direct"):
        if form not in ("direct", "mapped"):
            raise ParameterError(f"unknown wavefunction form {form!r}")
        if cp.l_quantum <= -1.0:
            raise NonNormalizableError("requires l > -1 for an integrable origin")
        self.cp = cp
        self.model = model
        self.form = form
        kap = cp.kappa
        if form == "direct":
            self._power = cp.l_quantum + 1.0
            self._decay = cp.z_charge / (cp.l_quantum + 1.0)  # kappa=0 exponential rate
            self._tail_exp = -(cp.z_charge / ((cp.l_quantum + 1.0) * kap) + cp.l_quantum + 1.0) if kap > 0 else 0.0
        else:
            self._power = model.mu_gs + 0.5
            self._decay = -model.lambda_gs
            self._tail_exp = model.lambda_gs / kap - model.mu_gs - 0.5 if kap > 0 else 0.0
        if kap > 0.0:
            # integrability at infinity: |xi|^2 ~ r^{2(power + tail_exp)}
            if 2.0 * (self._power + self._tail_exp) >= -1.0:
                raise NonNormalizableError("exponent combination is not square integrable")
        elif self._decay <= 0.0:
            raise NonNormalizableError("exponential tail rate must be positive")
        self._norm, self._r_max = self._normalize()

    def _raw(self, r):
        ra = np.asarray(r, dtype=float)
        if np.any(ra <= 0.0):
            raise ParameterError("radial coordinate must be positive")
        with np.errstate(under="ignore"):
            if self.cp.kappa > 0.0:
                return np.exp(self._power * np.log(ra) + self._tail_exp * np.log1p(self.cp.kappa * ra))
            return np.exp(self._power * np.log(ra) - self._decay * ra)

    def _raw_triple(self, r):
        ra = np.asarray(r, dtype=float)
        f = self._raw(ra)
        if self.cp.kappa > 0.0:
            g = self._power / ra + self._tail_exp * self.cp.kappa / (1.0 + self.cp.kappa * ra)
            gp = -self._power / ra**2 - self._tail_exp * (self.cp.kappa / (1.0 + self.cp.kappa * ra)) ** 2
        else:
            g = self._power / ra - self._decay
            gp = -self._power / ra**2
        return f, f * g, f * (g * g + gp)

    def _normalize(self):
        peak = (self._power) / self._decay if self.cp.kappa == 0.0 else max(
            (self.cp.l_quantum + 1.0) ** 2 / max(self.cp.z_charge, 1e-12), 1.0
        )
        r_max = max(40.0 * peak, 40.0)
        for _ in range(120):
            norm = _quad_norm(self._raw, 0.0, r_max, points=(0.5 * peak, peak, 2.0 * peak))
            edge = float(self._raw(r_max)) / norm
            m_edge, _, _ = self.mass_profile_value(r_max)
            if abs(edge) <= _BOUNDARY_TOL and edge * edge / math.sqrt(m_edge) <= _BOUNDARY_TOL:
                return norm, r_max
            r_max *= 1.4
        return norm, r_max

    def mass_profile_value(self, r):
        kap = self.cp.kappa
        ra = np.asarray(r, dtype=float)
        m = 1.0 / (1.0 + kap * ra) ** 2
        return m, None, None

    @property
    def r_max(self) -> float:
        return self._r_max

    def value(self, r):
        return self._raw(r) / self._norm

    def derivatives(self, r):
        f, d1, d2 = self._raw_triple(r)
        return f / self._norm, d1 / self._norm, d2 / self._norm

    def tail_diagnostic(self, r):
        m, _, _ = self.mass_profile_value(r)
        return self.value(r) ** 2 / np.sqrt(m)


def coulomb_ground_wavefunction(cp: CoulombParams, model: RationalMassMorseModel, r, form: str = "direct"):
    """Normalized xi(r); prefer CoulombGroundState when evaluating repeatedly."""
    return CoulombGroundState(cp, model, form=form).value(r)
