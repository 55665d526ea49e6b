"""Run configuration shared by the CLI commands.

Precedence: command-line flags > config file > per-model defaults.  Config
files are JSON objects restricted to the documented keys; unknown keys are
rejected so typos fail loudly instead of silently using defaults.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .core import AmbiguityParams
from .errors import ParameterError

MODELS = ("exp-morse", "rational-morse", "pdm-coulomb")

_FILE_KEYS = {
    "model", "A", "B", "alpha", "beta", "kappa", "levels", "n", "samples",
    "x_min", "x_max", "points", "format", "out", "tol", "expected",
}

_DEFAULTS = {
    "exp-morse": dict(a_coupling=2.5, b_coupling=1.0, alpha=0.0, beta=0.0, kappa=0.0, levels=2),
    "rational-morse": dict(a_coupling=2.0, b_coupling=1.0, alpha=0.0, beta=0.0, kappa=0.1, levels=2),
    "pdm-coulomb": dict(a_coupling=2.0, b_coupling=1.0, alpha=0.0, beta=0.0, kappa=0.1, levels=1),
}


@dataclass(frozen=True)
class RunConfig:
    model: str
    a_coupling: float
    b_coupling: float
    alpha: float
    beta: float
    kappa: float
    levels: int
    n: int = 0
    samples: int = 201
    x_min: Optional[float] = None
    x_max: Optional[float] = None
    n_points: Optional[int] = None
    fmt: str = "json"
    out: Optional[str] = None
    tol: float = 1e-6
    expected: Optional[dict] = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise ParameterError(f"unknown model {self.model!r}; choose one of {MODELS}")
        if self.fmt not in ("json", "csv"):
            raise ParameterError(f"unknown format {self.fmt!r}; choose json or csv")
        if self.levels < 0:
            raise ParameterError("levels must be non-negative")
        if self.samples < 2:
            raise ParameterError("samples must be at least 2")
        if self.tol <= 0.0:
            raise ParameterError("tolerance must be positive")

    @property
    def amb(self) -> AmbiguityParams:
        return AmbiguityParams(self.alpha, self.beta)

    def params_payload(self) -> dict:
        return {
            "A": self.a_coupling,
            "B": self.b_coupling,
            "alpha": self.alpha,
            "beta": self.beta,
            "kappa": self.kappa,
        }


def load_config_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterError("config file must hold a JSON object")
    unknown = sorted(set(data) - _FILE_KEYS)
    if unknown:
        raise ParameterError(f"unknown config keys: {', '.join(unknown)}")
    return data


def make_run_config(file_data: Optional[dict] = None, **overrides) -> RunConfig:
    """Assemble a RunConfig from a parsed config file plus CLI overrides;
    any override explicitly passed as None is treated as absent."""
    file_data = dict(file_data or {})
    overrides = {k: v for k, v in overrides.items() if v is not None}

    model = overrides.get("model", file_data.get("model"))
    if model is None:
        model = "rational-morse"
    if model not in MODELS:
        raise ParameterError(f"unknown model {model!r}; choose one of {MODELS}")
    base = _DEFAULTS[model]

    def pick(cli_key, file_key, default):
        if cli_key in overrides:
            return overrides[cli_key]
        if file_key in file_data:
            return file_data[file_key]
        return default

    try:
        return RunConfig(
            model=model,
            a_coupling=float(pick("a_coupling", "A", base["a_coupling"])),
            b_coupling=float(pick("b_coupling", "B", base["b_coupling"])),
            alpha=float(pick("alpha", "alpha", base["alpha"])),
            beta=float(pick("beta", "beta", base["beta"])),
            kappa=float(pick("kappa", "kappa", base["kappa"])),
            levels=int(pick("levels", "levels", base["levels"])),
            n=int(pick("n", "n", 0)),
            samples=int(pick("samples", "samples", 201)),
            x_min=_opt_float(pick("x_min", "x_min", None)),
            x_max=_opt_float(pick("x_max", "x_max", None)),
            n_points=_opt_int(pick("n_points", "points", None)),
            fmt=str(pick("fmt", "format", "json")),
            out=pick("out", "out", None),
            tol=float(pick("tol", "tol", 1e-6)),
            expected=file_data.get("expected"),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParameterError):
            raise
        raise ParameterError(f"invalid configuration value: {exc}") from exc


def _opt_float(v):
    return None if v is None else float(v)


def _opt_int(v):
    return None if v is None else int(v)
