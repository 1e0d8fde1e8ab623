"""Exception hierarchy shared by the library and the CLI.

The CLI maps :class:`InvariantViolation` to exit status 2 and every other
:class:`DeltaboundError` to exit status 1.
"""


class DeltaboundError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DeltaboundError, ValueError):
    """Malformed user input: wrong dimensions, bad rationals, bad files."""


class DomainError(DeltaboundError, ValueError):
    """Input is well formed but outside an operation's precondition."""


class ModelError(DeltaboundError):
    """The surface model cannot support the requested computation.

    Raised for lattices with the wrong signature, unbounded curve searches
    and thresholds that would be irrational.
    """


class InvariantViolation(DeltaboundError, AssertionError):
    """An internal consistency check failed. Always a bug, never a result."""
