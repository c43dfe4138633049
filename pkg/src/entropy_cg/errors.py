"""Exception hierarchy shared by all modules."""


class EntropyCGError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(EntropyCGError, ValueError):
    """Unsupported option, unknown name or invalid configuration value."""


class ValidationError(EntropyCGError, ValueError):
    """Input data violates a structural requirement (mesh, matrix shape...)."""


class MeshParseError(ValidationError):
    """Malformed ASCII mesh document."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GeometryError(EntropyCGError, ValueError):
    """Degenerate or inverted element."""


class DomainError(EntropyCGError, ValueError):
    """Evaluation point outside the reference element."""


class NumericalError(EntropyCGError, ArithmeticError):
    """Non-finite values or a failed linear solve."""
