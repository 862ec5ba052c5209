"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class NumericalDomainError(ArithmeticError):
    """Raised when a closed-form evaluation leaves its numerical domain.

    The typical trigger is a covariance matrix whose invariants are
    inconsistent with a physical two-mode Gaussian state (for example a
    negative discriminant in the symplectic-eigenvalue formula).
    """


class TruncationError(RuntimeError):
    """Raised when a Fock-space truncation is too aggressive for the
    requested evolution; the caller must raise ``n_cut``."""


class IntegrationError(RuntimeError):
    """Raised when a moment integration becomes unphysical (step too large)."""
