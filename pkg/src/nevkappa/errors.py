"""Exception hierarchy shared by all modules."""


class NevKappaError(Exception):
    """Base class for domain errors raised by this package."""


class PoleOnSupport(NevKappaError, ValueError):
    """Evaluation point lies on (or numerically on) the support or a pole."""


class DivergentIntegral(NevKappaError, ValueError):
    """The requested integral is infinite by the exponent test."""


class QuadratureFailure(NevKappaError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""


class OriginSingularity(NevKappaError, ValueError):
    """Evaluation at z = 0 of a function singular at the origin."""


class NearSingularity(NevKappaError, ValueError):
    """Evaluation point is within the guard radius of an isolated pole."""


class InvalidWindows(NevKappaError, ValueError):
    """Window centres are not negative and strictly decreasing."""


class EmptyWindow(NevKappaError, ValueError):
    """A window carries no mass."""


class PreconditionFailed(NevKappaError, ValueError):
    pass


class CoincidentPoints(NevKappaError, ValueError):
    pass


class NonHermitianInput(NevKappaError, ValueError):
    pass


class DimensionMismatch(NevKappaError, ValueError):
    pass


class WitnessNotFound(NevKappaError, RuntimeError):
    """The witness grid scan was exhausted without success."""


class NonIntegrableTail(NevKappaError, ValueError):
    pass


class InternalInconsistency(NevKappaError, AssertionError):
    """A conversion failed its own round-trip check (a bug, not bad input)."""
