"""Exception types shared across the package."""


class AgkeqError(Exception):
    """Base class for all package errors."""


class FieldError(AgkeqError):
    pass


class ReducibleModulus(FieldError):
    """The given modulus polynomial factors over GF(p)."""


class MixedFields(FieldError):
    """Operands belong to different fields."""


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class LinalgError(AgkeqError):
    pass


class DimensionMismatch(LinalgError):
    pass


class NotSubspace(LinalgError):
    """A claimed containment of row spaces does not hold."""


class NotInSpace(LinalgError):
    """A vector/function is not in the span it was resolved against."""


class CurveError(AgkeqError):
    pass


class NotHomogeneous(CurveError):
    pass


class SingularCurve(CurveError):
    """Curve failed the smoothness check; carries a witness point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonRationalIntersection(CurveError):
    """A line meets the curve in points outside the base field."""


class PrecisionTooSmall(CurveError):
    """A requested series precision is not positive."""


class PrecisionExhausted(AgkeqError):
    """Adaptive precision escalation hit its hard cap."""


class FuncSpaceError(AgkeqError):
    pass


class UnsupportedDivisor(FuncSpaceError):
    """No fully rational line arrangement covers the divisor's poles."""


class AmbientTooSmall(FuncSpaceError):
    """Interpolation degree failed to realize the expected dimension."""


class DegenerateDecomposition(FuncSpaceError):
    """Direct-sum decomposition failed (summands intersect)."""


class PoleOrderUnbounded(FuncSpaceError):
    """A function's pole at an anchor exceeded every tracked bound."""


class CodeError(AgkeqError):
    pass


class SupportOverlap(CodeError):
    """supp(G) and supp(D) are required to be disjoint."""


class DegreeOutOfRange(CodeError):
    """deg G outside the range this construction supports."""


class PoleOnD(CodeError):
    """A function with a pole at an evaluation point was fed to a syndrome."""


class LengthMismatch(CodeError):
    pass


class DecoderError(AgkeqError):
    pass


class GenusZero(DecoderError):
    """The majority-coset loop needs g >= 1."""


class CapacityZero(DecoderError):
    """Designed correction capacity t is zero; nothing to decode."""


class NoExtraPoint(DecoderError):
    """No rational point available outside supp(D) to grow divisors at."""


class ConditionAViolated(DecoderError):
    """A coset step was requested where condition A does not hold."""


class InvariantViolation(AgkeqError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ConfigError(AgkeqError):
    pass
