class XCorrError(ValueError):
    """Base class for every error raised by this package."""


class InvalidParams(XCorrError):
    pass


class UnsupportedDegree(XCorrError):
    pass


class NonPrimitiveModulus(XCorrError):
    pass


class DivisionByZero(XCorrError, ZeroDivisionError):
    pass


class BadSubfieldDegree(XCorrError):
    pass


class ArgNotInSubfield(XCorrError):
    pass


class ShiftOutOfRange(XCorrError):
    pass


class DegenerateArg(XCorrError):
    pass


class NotVFormPoint(XCorrError):
    pass


class BadTwistorR(XCorrError):
    pass


class DegenerateK1(XCorrError):
    pass


class DivisibilityViolation(XCorrError, ArithmeticError):
    pass
