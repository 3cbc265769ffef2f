"""Exception hierarchy shared by every module."""


class HypercfError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HypercfError, ValueError):
    """An argument lies outside the domain of an operation."""


class PrecisionError(HypercfError):
    """A coefficient outside the known precision window was requested."""


class HenselError(HypercfError):
    """No attracting simple root near the supplied seed."""


class SingularityError(HenselError):
    """The derivative vanishes at the seed to working precision."""


class InvariantViolation(HypercfError):
    """An internal cross-check failed; results cannot be trusted."""


class TheoremViolation(InvariantViolation):
    """A computed expansion contradicts the defining data of its spec."""


class ResourceCapExceeded(HypercfError):
    """A computation hit its configured precision cap."""
