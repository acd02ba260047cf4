"""Exception hierarchy.

Every domain failure derives from :class:`ToricError` so the CLI can map
them to exit code 1 in one place.
"""


class ToricError(Exception):
    pass


class DimensionMismatch(ToricError, ValueError):
    pass


class RankDeficient(ToricError, ValueError):
    pass


class ZeroScaling(ToricError, ValueError):
    pass


class InvalidScaling(ToricError, ValueError):
    pass


class ZeroTheta(ToricError, ValueError):
    pass


class NonPositiveP(ToricError, ValueError):
    pass


class InvalidData(ToricError, ValueError):
    pass


class NotConverged(ToricError, RuntimeError):
    pass


class OffModel(ToricError, ValueError):
    pass


class ModelMismatch(ToricError, ValueError):
    pass


class SingularJacobian(ToricError, RuntimeError):
    pass


class CorrectorDiverged(ToricError, RuntimeError):
    pass


class StepUnderflow(ToricError, RuntimeError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class PositivityLost(ToricError, RuntimeError):
    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class ZeroPolynomial(ToricError, ValueError):
    pass


class StartInvalid(ToricError, RuntimeError):
    pass


class RankReductionFailed(ToricError, RuntimeError):
    pass


class NotHypersurface(ToricError, ValueError):
    pass


class KernelDimension(ToricError, ValueError):
    pass


class NotGeneralPosition(ToricError, ValueError):
    pass


class InexactScaling(ToricError, TypeError):
    """A float was passed where an exact rational is required."""


class SolverDisagreement(ToricError, RuntimeError):
    pass


class MonotonicityViolated(ToricError, AssertionError):
    pass
