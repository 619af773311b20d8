"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of the requested quantity."""


class ConvergenceError(RuntimeError):
    """The truncated Fock-space oracle could not reach the requested leakage."""
