"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


class DegenerateIntervalError(DomainError):
    """Two-interval geometry too close to a degenerate limit to evaluate."""
