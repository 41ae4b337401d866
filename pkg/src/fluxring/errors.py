"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: UsageError -> 1,
ValidationError and subclasses -> 2, VerificationError -> 3.
"""


class FluxRingError(Exception):
    """Base class for all package errors."""


class UsageError(FluxRingError):
    """Malformed request: bad grids, unknown options, windows too small."""


class ValidationError(FluxRingError):
    """Physically or numerically inadmissible input."""


class ConfigError(ValidationError):
    """Missing or inconsistent configuration fields."""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateFieldError(ValidationError):
    """Field amplitudes carry no weight or satisfy both flux conditions at once."""


class CaseError(ValidationError):
    """Operation asked for a flux case it does not support."""


class DegeneracyError(ValidationError):
    """A degenerate level or vanishing superposition makes the request ill posed."""


class SingularOverlapError(ValidationError):
    """Overlap matrix is singular or indefinite (epsilon >= 1)."""


class DomainSizeError(ValidationError):
    """Discretization or quadrature domain too small for the requested state."""


class WindowError(ValidationError):
    """A scan window clipped the minimizer it was supposed to bracket."""


class ConvergenceError(FluxRingError):
    """An iterative numerical routine exhausted its budget."""


class VerificationError(FluxRingError):
    """A cross-check between independent computation routes failed."""


class ExpansionWarning(UserWarning):
    """A perturbative formula was evaluated outside its trusted range."""
