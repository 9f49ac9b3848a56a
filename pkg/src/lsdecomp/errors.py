"""Exception types shared across the package."""


class LsdError(Exception):
    """Base class for every error raised by this package."""


class NotHermitian(LsdError):
    pass


class NotSymmetric(LsdError):
    pass


class NotPSD(LsdError):
    pass


class NoConvergence(LsdError):
    pass


class DimensionMismatch(LsdError):
    pass


class NotBipartite(LsdError):
    pass


class InvalidProbabilities(LsdError):
    pass


class ThetaOutOfRange(LsdError):
    pass


class ParamOutOfRange(LsdError):
    pass


class DimensionTooLarge(LsdError):
    pass


class RawValidationFailed(LsdError):
    pass


class RawSpecUnsupported(LsdError):
    pass


class WrongDims(LsdError):
    pass


class DegenerateBasis(LsdError):
    pass


class BranchInfeasible(LsdError):
    pass


class DecompositionUnavailable(LsdError):
    """No implemented closed form produces a valid decomposition for the input."""


class UnsupportedRawDims(LsdError):
    pass


class EmptyFamily(LsdError):
    pass


class InfeasiblePoint(LsdError):
    pass


class NoDualCertificate(LsdError):
    pass


class InvariantViolation(LsdError):
    """A computed result failed its own consistency checks."""


class ParseError(LsdError):
    pass


class UnsupportedSpec(LsdError):
    pass
