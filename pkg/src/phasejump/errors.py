"""Exception types shared across the package."""


class PhaseJumpError(Exception):
    """Base class for errors raised by phasejump."""


class ConfigError(PhaseJumpError):
    """Configuration document rejected.

    Syntax errors carry a 1-based source location; semantic errors carry
    the offending key.
    """

    def __init__(self, message, *, line=None, column=None, key=None):
        if key is not None:
            message = f"{key}: {message}"
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
        self.key = key


class IntegrationError(PhaseJumpError):
    """Adaptive integrator could not continue (e.g. step-size underflow)."""

    def __init__(self, message, t=None):
        if t is not None:
            message = f"{message} (at t = {t:.6g})"
        super().__init__(message)
        self.t = t


class TailNotSettledError(PhaseJumpError):
    """Trajectory tail still varies: the pulse has not finished."""


class ExponentOverflowError(PhaseJumpError):
    """Integrating-factor exponent too large; outside the weak-coupling regime."""
