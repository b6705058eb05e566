"""Exception types shared across the package."""


class GraphCodeError(Exception):
    """Base class for all package errors."""


class DomainError(GraphCodeError, ValueError):
    """Arguments outside the mathematical domain of an operation."""


class ResourceError(GraphCodeError):
    """Requested computation exceeds a desk-scale cap."""


class IntegrityError(GraphCodeError):
    """An internal self-check failed; the output cannot be trusted."""
