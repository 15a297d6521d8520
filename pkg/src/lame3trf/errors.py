"""Exception types shared across the package."""


class DomainError(ValueError):
    """A parameter or argument lies outside the region where a quantity is defined."""


class DivergenceError(DomainError):
    """A non-terminating series was requested outside its disc of convergence."""


class PoleError(ZeroDivisionError):
    """Evaluation hit a pole (vanishing denominator parameter or rational pole)."""


class BranchError(DomainError):
    """A non-integer power of a negative real base was requested."""


class QuantizationError(ValueError):
    """Exponent parameter inconsistent with a requested polynomial quantization.

    The offending level is kept in ``level``.
    """

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class QuadratureError(RuntimeError):
    """Numerical quadrature produced an inconsistent result."""


class SingularConfigurationError(ZeroDivisionError):
    """A nested substitution chain hit a vanishing denominator."""
