"""Exception types shared across the package.

The CLI maps InputError to exit code 1 and InvariantViolation to exit
code 2; library code raises them directly.
"""


class InputError(ValueError):
    """Malformed or out-of-contract input (files, flags, arguments)."""


class InvariantViolation(AssertionError):
    """A quantity the algorithms guarantee failed its numeric check."""
