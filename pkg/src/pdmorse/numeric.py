"""Bridges between the analytic models and the finite-difference oracle:
per-model grids, extrapolated eigenvalue twins, and node counting."""
from __future__ import annotations

import math

import numpy as np

from .core import Grid
from .models import CoulombGroundState, CoulombParams, ExpMassMorseModel, RationalMassMorseModel
from .radial import RadialRationalMass
from .solver import refine_richardson

DEFAULT_BASE_H = 0.01


def grid_for(x_min: float, x_max: float, base_h: float = DEFAULT_BASE_H, n_points: int | None = None) -> Grid:
    if n_points is None:
        n_points = int(math.ceil((x_max - x_min) / base_h)) + 1
    return Grid(x_min, x_max, max(int(n_points), 3))


def exp_mass_numeric_energy(model: ExpMassMorseModel, grid: Grid | None = None) -> float:
    """Extrapolated eigenvalue of index ``level`` of the discretized operator
    for this level's potential configuration; should match -B^2."""
    if grid is None:
        lo, hi = model.domain
        hi = max(10.0, hi)
        # the Dirichlet truncation error at the right cut scales like
        # p*phi^2 ~ e^{2x} phi^2 because 1/M explodes there; push the cut
        # until that product is negligible against the oracle tolerance
        for _ in range(40):
            edge = float(model.wavefunction(hi))
            if math.exp(2.0 * hi) * edge * edge < 1e-9:
                break
            hi += 1.0
        grid = grid_for(min(-6.0, lo), hi)
    res = refine_richardson(model.mass, model.v_eff, grid, model.level + 1)
    return float(res.eigenvalues[model.level])


def rational_numeric_energies(model: RationalMassMorseModel, levels: int, grid: Grid | None = None) -> np.ndarray:
    """Extrapolated lowest ``levels`` eigenvalues of the rational-mass operator."""
    if grid is None:
        lo, hi = model.suggested_domain(levels - 1)
        glo, ghi = model.domain
        grid = grid_for(min(lo, glo), max(hi, ghi))
    res = refine_richardson(model.mass, model.v_eff, grid, levels)
    return res.eigenvalues


def coulomb_numeric_energy(
    cp: CoulombParams,
    model: RationalMassMorseModel,
    n: int,
    grid: Grid | None = None,
) -> float:
    """Extrapolated eigenvalue of index n of the half-line Coulomb operator
    -d/dr (1/M) d/dr - 2Z/r + l(l+1)/r^2 - kappa^2/4 with Dirichlet ends;
    should match lambda_nl."""
    z, l, kap = cp.z_charge, cp.l_quantum, cp.kappa

    def v(r):
        return -2.0 * z / r + l * (l + 1.0) / r**2 - 0.25 * kap * kap

    if grid is None:
        r_max = CoulombGroundState(cp, model).r_max * (1.0 + 0.4 * n)
        grid = grid_for(0.0, r_max, base_h=min(0.03, r_max / 3000.0))
    res = refine_richardson(RadialRationalMass(kap), v, grid, n + 1)
    return float(res.eigenvalues[n])


def analytic_node_count(values: np.ndarray) -> int:
    from .models import count_sign_changes

    return count_sign_changes(values)
