"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes (configuration -> 2, input -> 3,
insufficient data -> 4); library callers can catch the base class.
Plain contract violations (wrong argument shapes and the like) raise
ValueError as usual.
"""


class PermplaneError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(PermplaneError):
    """A parameter violates its documented constraint."""


class InputError(PermplaneError):
    """Input data cannot be parsed or breaks a data invariant."""


class InsufficientDataError(PermplaneError):
    """A series is too short for the requested computation."""


class InvalidDistributionError(PermplaneError):
    """A probability vector is not a valid discrete distribution."""
