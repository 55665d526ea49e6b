"""Exactly solvable position-dependent-mass Morse and Coulomb models with an
independent finite-difference Sturm-Liouville oracle."""

from ._kernels import ACTIVE_BACKEND
from .core import (
    AmbiguityParams,
    ConstantMass,
    ExponentialMass,
    Grid,
    RationalMass,
    effective_potential,
    kinetic_correction,
)
from .errors import (
    ComplexAngularMomentumError,
    ConsistencyError,
    DegenerateSampleError,
    DomainOverflowError,
    DomainTooWideError,
    InvalidLevelError,
    NoBoundStateError,
    NonNormalizableError,
    ParameterError,
    PdmError,
)
from .laguerre import LaguerreSpec, laguerre, laguerre_derivative
from .models import (
    CoulombGroundState,
    CoulombParams,
    ExpMassMorseModel,
    MorseParams,
    RationalMassMorseModel,
    coulomb_ground_wavefunction,
    coulomb_parameters,
    count_sign_changes,
)
from .radial import (
    MapChainReport,
    RadialRationalMass,
    StageReport,
    coulomb_equation_residual,
    from_radial,
    mapped_morse_potential,
    norm_carried_to_radial,
    radial_effective_potential,
    radial_effective_potential_via_chain,
    to_radial,
    verify_chain,
)
from .solver import (
    DiscretizedOperator,
    EigenResult,
    discretize,
    eigenvalues_bisect,
    refine_richardson,
    residual_norm,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "AmbiguityParams",
    "ComplexAngularMomentumError",
    "ConsistencyError",
    "ConstantMass",
    "CoulombGroundState",
    "CoulombParams",
    "DegenerateSampleError",
    "DiscretizedOperator",
    "DomainOverflowError",
    "DomainTooWideError",
    "EigenResult",
    "ExpMassMorseModel",
    "ExponentialMass",
    "Grid",
    "InvalidLevelError",
    "LaguerreSpec",
    "MapChainReport",
    "MorseParams",
    "NoBoundStateError",
    "NonNormalizableError",
    "ParameterError",
    "PdmError",
    "RadialRationalMass",
    "RationalMass",
    "RationalMassMorseModel",
    "StageReport",
    "coulomb_equation_residual",
    "coulomb_ground_wavefunction",
    "coulomb_parameters",
    "count_sign_changes",
    "discretize",
    "effective_potential",
    "eigenvalues_bisect",
    "from_radial",
    "kinetic_correction",
    "laguerre",
    "laguerre_derivative",
    "mapped_morse_potential",
    "norm_carried_to_radial",
    "radial_effective_potential",
    "radial_effective_potential_via_chain",
    "refine_richardson",
    "residual_norm",
    "to_radial",
    "verify_chain",
]
