"""Exception types shared across the toolkit."""


class QhkitError(Exception):
    """Base class for all toolkit errors."""


class MembershipError(QhkitError, ValueError):
    """A point lies outside the space, region, or map domain it was used with."""


class ConfigurationError(QhkitError, ValueError):
    """Invalid construction parameters (bbox, grading factor, sample spec, ...)."""


class ValidationError(QhkitError, ValueError):
    """Structured input failed a contract check (non-monotone table, bad range)."""


class ResolutionError(QhkitError, ValueError):
    """A discretization step is too coarse to produce a usable result."""


class ConnectivityError(QhkitError, RuntimeError):
    """Requested endpoints are not joined by the discretization."""


class CompositionError(QhkitError, ValueError):
    """Map composition with mismatched source/image regions."""
