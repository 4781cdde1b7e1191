"""Error types shared across the package."""


class PreconditionError(ValueError):
    """Caller violated a documented precondition (CLI exit code 2)."""


class InvariantError(RuntimeError):
    """An internal mathematical invariant failed (CLI exit code 3)."""
