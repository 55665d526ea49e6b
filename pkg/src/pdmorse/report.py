"""Builders for the spectrum and wavefunction reports emitted by the CLI.

Payloads are plain dicts of JSON-ready values (floats, ints, strings, lists)
with no timestamps, so identical configurations serialize byte-identically.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from .config import RunConfig
from .core import Grid
from .errors import ParameterError
from .models import (
    CoulombGroundState,
    ExpMassMorseModel,
    RationalMassMorseModel,
    coulomb_parameters,
    count_sign_changes,
)
from .numeric import (
    coulomb_numeric_energy,
    exp_mass_numeric_energy,
    grid_for,
    rational_numeric_energies,
)
from .radial import coulomb_equation_residual
from .solver import discretize, eigenvalues_bisect, residual_norm

SPECTRUM_COLUMNS = ("n", "energy_analytic", "energy_numeric", "abs_diff", "residual", "nodes")
WAVEFUNCTION_COLUMNS = ("coordinate", "value", "tail_diagnostic")


def _residual_samples_exp(model: ExpMassMorseModel) -> np.ndarray:
    peak = math.log(model.b_coupling / (model.a_coupling + 1.0 - model.level))
    return np.linspace(peak - 3.0, peak + 6.0, 50)


def _grid_override(cfg: RunConfig, default_lo: float, default_hi: float) -> Grid | None:
    if cfg.x_min is None and cfg.x_max is None and cfg.n_points is None:
        return None
    lo = cfg.x_min if cfg.x_min is not None else default_lo
    hi = cfg.x_max if cfg.x_max is not None else default_hi
    return grid_for(lo, hi, n_points=cfg.n_points)


def spectrum_report(cfg: RunConfig) -> dict:
    rows = {
        "exp-morse": _exp_spectrum_rows,
        "rational-morse": _rational_spectrum_rows,
        "pdm-coulomb": _coulomb_spectrum_rows,
    }[cfg.model](cfg)
    passed = all(_row_passes(r, cfg.tol) for r in rows)
    return {
        "command": "spectrum",
        "model": cfg.model,
        "params": cfg.params_payload(),
        "tolerance": cfg.tol,
        "levels": rows,
        "passed": passed,
    }


def _row_passes(row: dict, tol: float) -> bool:
    if row["abs_diff"] > tol:
        return False
    return row["residual"] is None or row["residual"] <= 1e-8


def _exp_spectrum_rows(cfg: RunConfig) -> list:
    rows = []
    for n in range(cfg.levels):
        model = ExpMassMorseModel(cfg.a_coupling, cfg.b_coupling, n, cfg.amb)
        lo, hi = model.domain
        grid = _grid_override(cfg, min(-6.0, lo), max(10.0, hi))
        numeric = exp_mass_numeric_energy(model, grid)
        residual = residual_norm(
            model.mass, model.v_eff, model.energy, model.wavefunction_derivatives, _residual_samples_exp(model)
        )
        nodes = count_sign_changes(model.wavefunction(np.linspace(lo, hi, 801)))
        rows.append(
            {
                "n": n,
                "energy_analytic": model.energy,
                "energy_numeric": numeric,
                "abs_diff": abs(numeric - model.energy),
                "residual": residual,
                "nodes": nodes,
                "v0": model.v0,
                "companion_energy": model.companion_energy,
            }
        )
    return rows


def _rational_spectrum_rows(cfg: RunConfig) -> list:
    model = RationalMassMorseModel(cfg.a_coupling, cfg.b_coupling, cfg.kappa, cfg.amb)
    if cfg.levels == 0:
        return []
    analytic = [model.energy(n) for n in range(cfg.levels)]
    lo, hi = model.suggested_domain(cfg.levels - 1)
    glo, ghi = model.domain
    grid = _grid_override(cfg, min(lo, glo), max(hi, ghi)) or grid_for(min(lo, glo), max(hi, ghi))
    numeric = rational_numeric_energies(model, cfg.levels, grid)
    # node counts: closed form for the ground state, numeric eigenvectors above
    nodes = [count_sign_changes(model.ground_wavefunction(np.linspace(glo, ghi, 801)))]
    if cfg.levels > 1:
        fine = eigenvalues_bisect(discretize(model.mass, model.v_eff, grid.refined()), cfg.levels, want_vectors=True)
        for n in range(1, cfg.levels):
            nodes.append(count_sign_changes(fine.eigenvectors[:, n], rel_floor=1e-6))
    rows = []
    for n in range(cfg.levels):
        residual = None
        if n == 0:
            residual = residual_norm(
                model.mass,
                model.v_eff,
                analytic[0],
                model.ground_wavefunction_derivatives,
                np.linspace(max(glo, -8.0), min(ghi, 6.0), 50),
            )
        rows.append(
            {
                "n": n,
                "energy_analytic": analytic[n],
                "energy_numeric": float(numeric[n]),
                "abs_diff": abs(float(numeric[n]) - analytic[n]),
                "residual": residual,
                "nodes": nodes[n],
            }
        )
    return rows


def _coulomb_spectrum_rows(cfg: RunConfig) -> list:
    model = RationalMassMorseModel(cfg.a_coupling, cfg.b_coupling, cfg.kappa, cfg.amb)
    rows = []
    for n in range(cfg.levels):
        cp = coulomb_parameters(model, n)
        numeric = coulomb_numeric_energy(cp, model, n)
        residual = None
        nodes = n
        if n == 0:
            residual = coulomb_equation_residual(model, 0)
            state = CoulombGroundState(cp, model)
            nodes = count_sign_changes(state.value(np.linspace(1e-3, state.r_max, 801)))
        rows.append(
            {
                "n": n,
                "energy_analytic": cp.lambda_nl,
                "energy_numeric": numeric,
                "abs_diff": abs(numeric - cp.lambda_nl),
                "residual": residual,
                "nodes": nodes,
                "Z": cp.z_charge,
                "l": cp.l_quantum,
                "lambda": cp.lambda_nl,
            }
        )
    return rows


def wavefunction_report(cfg: RunConfig) -> dict:
    n = cfg.n
    if cfg.model == "exp-morse":
        model = ExpMassMorseModel(cfg.a_coupling, cfg.b_coupling, n, cfg.amb)
        lo, hi = model.domain
        lo = cfg.x_min if cfg.x_min is not None else lo
        hi = cfg.x_max if cfg.x_max is not None else hi
        xs = np.linspace(lo, hi, cfg.samples)
        values = model.wavefunction(xs)
        diag = model.tail_diagnostic(xs)
        norm_sq, _ = quad(lambda t: float(model.wavefunction(t)) ** 2, *model.domain, limit=300)
    elif cfg.model == "rational-morse":
        if n != 0:
            raise ParameterError("only the ground state has a closed form for this model")
        model = RationalMassMorseModel(cfg.a_coupling, cfg.b_coupling, cfg.kappa, cfg.amb)
        lo, hi = model.domain
        lo = cfg.x_min if cfg.x_min is not None else lo
        hi = cfg.x_max if cfg.x_max is not None else hi
        xs = np.linspace(lo, hi, cfg.samples)
        values = model.ground_wavefunction(xs)
        diag = model.tail_diagnostic(xs)
        norm_sq, _ = quad(lambda t: float(model.ground_wavefunction(t)) ** 2, *model.domain, limit=300)
    else:
        if n != 0:
            raise ParameterError("only the ground state has a closed form for this model")
        model = RationalMassMorseModel(cfg.a_coupling, cfg.b_coupling, cfg.kappa, cfg.amb)
        cp = coulomb_parameters(model, 0)
        state = CoulombGroundState(cp, model)
        lo = cfg.x_min if cfg.x_min is not None else state.r_max / cfg.samples
        hi = cfg.x_max if cfg.x_max is not None else state.r_max
        xs = np.linspace(lo, hi, cfg.samples)
        values = state.value(xs)
        diag = state.tail_diagnostic(xs)
        norm_sq, _ = quad(lambda t: float(state.value(t)) ** 2, 0.0, state.r_max, limit=300)
    return {
        "command": "wavefunction",
        "model": cfg.model,
        "params": cfg.params_payload(),
        "level": n,
        "norm": math.sqrt(norm_sq),
        "nodes": count_sign_changes(values),
        "samples": [
            {"coordinate": float(c), "value": float(v), "tail_diagnostic": float(d)}
            for c, v, d in zip(xs, values, diag)
        ],
    }
