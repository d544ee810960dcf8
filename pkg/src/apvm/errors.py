"""Exception types raised across the package."""


class ApvmError(Exception):
    """Base class for all package errors."""


class ConfigurationError(ApvmError, ValueError):
    """Invalid grid, scenario or run parameters."""


class DomainError(ApvmError, ValueError):
    """A function was evaluated outside its domain (pole, overflow, y <= 0)."""


class ConsistencyError(ApvmError, RuntimeError):
    """An internal invariant (e.g. Hermitian symmetry) was violated."""


class NoRootError(ApvmError, RuntimeError):
    """Newton iteration did not converge. The last iterate is kept in ``last``."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class IllConditionedError(ApvmError, RuntimeError):
    """The dispersion integrand pole sits on the real integration axis."""


class AbortedRunError(ApvmError, RuntimeError):
    """A run produced non-finite values. ``t_last`` is the last valid time."""

    def __init__(self, message, t_last=None):
        super().__init__(message)
        self.t_last = t_last


class ConfigParseError(ApvmError, ValueError):
    """Malformed config file. ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
