"""Exception hierarchy shared by all solver modules."""


class RabiError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(RabiError, ValueError):
    """A model parameter violates its physical invariant."""

    field = ""


class NonPositiveOmega(InvalidParams):
    field = "omega"


class NegativeResonance(InvalidParams):
    field = "Omega_r"


class NegativeCoupling(InvalidParams):
    field = "g"


class NegativeDegree(RabiError, ValueError):
    pass


class NoBracket(RabiError, RuntimeError):
    pass


class NoConvergence(RabiError, RuntimeError):
    pass


class DimensionOverflow(RabiError, ValueError):
    pass


class TruncationTooSmall(RabiError, ValueError):
    pass


class InvalidSpec(RabiError, ValueError):
    pass


class OutputError(RabiError, OSError):
    pass
