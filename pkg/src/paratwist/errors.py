"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Bad user input: unknown family, rank out of range, malformed marking."""


class InvariantViolation(RuntimeError):
    """A computed object contradicts a structural theorem.

    Raised when two independent routes disagree or a combinatorial
    invariant fails. Always an implementation bug, never a user error.
    """
