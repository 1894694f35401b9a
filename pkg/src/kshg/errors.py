"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented contract (CLI exit code 1)."""


class CapacityError(RuntimeError):
    """Raised when an exact search would exceed its configured size limit (CLI exit code 2)."""
