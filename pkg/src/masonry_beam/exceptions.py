"""Exception hierarchy."""


class MasonryBeamError(Exception):
    """Base class for all errors raised by this package."""


class SectionCapacityExceeded(MasonryBeamError):
    """The bending moment reached the cracked-section capacity ``-N h / 2``."""


class DomainNearCapacity(MasonryBeamError):
    """Closed-form evaluation refused inside the guard band below ``H_max``."""


class BeyondCriticalLoad(MasonryBeamError):
    """Axial load at or above the elastic (Euler) critical load."""


class BeyondCollapse(MasonryBeamError):
    """The static second-order solve failed, so no equilibrium state exists."""

    def __init__(self, message: str, status: str = "not_converged"):
        super().__init__(message)
        self.status = status


class ConfigError(MasonryBeamError):
    """Invalid run configuration."""
