"""Error taxonomy shared by the library and the CLI.

Each class maps to one CLI exit code, so library code must raise the most
specific type that applies.
"""


class HilbertSeriesError(Exception):
    """Base class for all package errors."""


class ConfigError(HilbertSeriesError):
    """Malformed or contradictory configuration (CLI exit 2)."""


class DomainError(HilbertSeriesError):
    """Argument outside the mathematical domain of an operation (exit 3)."""


class HypothesisRangeError(DomainError):
    """Weight exponents outside the range where the norm theory applies."""


class HorizonError(DomainError):
    """A moment table is too short for the requested computation."""


class PrecisionCapError(HilbertSeriesError):
    """A certified tolerance cannot be met within resource caps (exit 4)."""


class NonConvergenceError(HilbertSeriesError):
    """An iteration failed to meet its tolerance in the allowed steps (exit 5)."""
