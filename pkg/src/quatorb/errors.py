"""Exception types shared across the package."""


class QuatorbError(Exception):
    """Base class for all package-specific errors."""


class DomainError(QuatorbError, ValueError):
    """Input lies outside an operation's mathematical domain."""


class InvariantViolationError(QuatorbError, RuntimeError):
    """An internal consistency check failed beyond its tolerance."""


class UnsupportedFieldError(QuatorbError, TypeError):
    """The operation needs analytic derivatives the field does not carry."""


class GradientMismatchError(QuatorbError, ValueError):
    """A declared analytic gradient disagrees with finite differences."""


class StepSizeError(QuatorbError, ValueError):
    """Finite-difference step outside the trustworthy range."""


class ConfigError(QuatorbError, ValueError):
    """Malformed or inconsistent configuration input."""


class IntegrationAbortError(QuatorbError, RuntimeError):
    """Integration produced a non-finite state."""

    def __init__(self, step: int, t: float):
        self.step = step
        self.t = t
        super().__init__(f"non-finite state at step {step} (t = {t:.6g})")
