"""
Exception hierarchy shared by the algebra core and the spectral tools.

Every failure raised on purpose derives from `HeckeToolkitError`, so callers
(the CLI in particular) can map a whole family of problems to one exit code.
"""
from typing import Optional


class HeckeToolkitError(Exception):
    """Base class for exceptions in the toolkit."""
    exit_code = 1


class ConfigurationError(HeckeToolkitError):
    """Unknown root system type or invalid environment setting."""
    exit_code = 2


class UsageError(HeckeToolkitError):
    """A call or command was given arguments outside its contract."""
    exit_code = 2


class UnsupportedError(UsageError):
    """The request is well formed but the requested analysis does not apply."""
    pass


class DomainError(UsageError):
    """Numeric input lies outside the domain of a closed-form bound."""
    pass


class ValidationError(HeckeToolkitError):
    """
    Input data violates a defining relation.

    Attributes:
        relation (str | None): Name of the relation that failed, e.g. "h_s0^2".
        residual (float | None): Norm of the residual of that relation.
    """
    exit_code = 1

    def __init__(self, message: str, relation: Optional[str] = None, residual: Optional[float] = None):
        super().__init__(message)
        self.relation = relation
        self.residual = residual


class ResourceError(HeckeToolkitError):
    """
    A configured cap would be exceeded.

    Attributes:
        required (int | None): Estimate of the cap value that would suffice.
    """
    exit_code = 3

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class InternalError(HeckeToolkitError):
    """A state that the mathematics rules out was reached."""
    exit_code = 1
