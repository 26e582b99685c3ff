"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class PulsegravError(Exception):
    exit_code = 1


class DomainError(PulsegravError, ValueError):
    exit_code = 3


class AxisSingularityError(DomainError):
    """Field requested too close to the pulse line inside a causal shell."""


class UnsupportedFeatureError(DomainError):
    pass


class NumericalError(PulsegravError, ArithmeticError):
    exit_code = 5


class QuadratureError(NumericalError):
    def __init__(self, message, abserr=None):
        super().__init__(message)
        self.abserr = abserr


class TrajectoryTruncated(NumericalError):
    def __init__(self, reason, trajectory=None):
        super().__init__(reason)
        self.reason = reason
        self.trajectory = trajectory


class IOFailure(PulsegravError, OSError):
    exit_code = 4
