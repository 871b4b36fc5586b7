"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Raised on malformed numerical input (non-finite entries, out-of-range k, ...)."""


class UnsupportedDomainError(ValueError):
    """Raised when a geometric query is not available for a domain kind."""


class ConfigError(ValueError):
    """Raised on malformed run configuration (unknown keys, wrong types)."""


class GridError(ValueError):
    """Raised when a grid cannot be built (e.g. too coarse to contain nodes)."""


class BracketFailureError(RuntimeError):
    """Raised when eigenvalue bisection cannot certify a bracket."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history or [])
