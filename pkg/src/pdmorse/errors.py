"""Exception types shared across the package."""


class PdmError(Exception):
    """Base class for package-specific errors."""


class ParameterError(PdmError, ValueError):
    """A model, grid, or configuration parameter violates its contract."""


class DomainOverflowError(PdmError, ArithmeticError):
    """An evaluation left the representable floating-point range.

    Carries the offending coordinate in ``where`` when known.
    """

    def __init__(self, message, where=None):
        super().__init__(message)
        self.where = where


class DomainTooWideError(DomainOverflowError):
    """Operator assembly hit a non-finite 1/M or V_eff at a grid node."""


class NoBoundStateError(PdmError, ValueError):
    """The requested level lies outside the bound-state ladder."""


class InvalidLevelError(PdmError, ValueError):
    """The closed-form spectrum does not admit this level."""


class NonNormalizableError(PdmError, ValueError):
    """The requested wavefunction is not square integrable."""


class ComplexAngularMomentumError(PdmError, ValueError):
    """The effective angular momentum would be complex for this level."""


class DegenerateSampleError(PdmError, ValueError):
    """A residual check received samples on which the function vanishes."""


class ConsistencyError(PdmError, RuntimeError):
    """Two independent closed-form routes disagreed beyond tolerance."""
