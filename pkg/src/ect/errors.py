"""Exception types raised across the package."""


class EctError(Exception):
    """Base class for all package-specific errors."""


class MissingCoordinates(EctError):
    pass


class EulerCheckFailed(EctError):
    pass


class DegenerateGraph(EctError):
    pass


class SameParityParallel(EctError):
    pass


class NotACycle(EctError):
    pass


class TooLarge(EctError):
    pass


class NoEvenCycle(EctError):
    pass


class SharedBoundaryNotPath(EctError):
    pass


class QuasiPerfectViolation(EctError):
    pass


class DesignationFlip(EctError):
    pass


class ZeroRateDeadlock(EctError):
    pass


class NonTermination(EctError):
    pass


class InfeasibleInput(EctError):
    pass


class OddK(EctError):
    pass


class ParseError(EctError):
    pass


class VerificationFailure(EctError):
    pass
