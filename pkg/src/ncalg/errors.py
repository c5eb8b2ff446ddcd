"""Exception hierarchy shared across the engine."""


class NcalgError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(NcalgError, ZeroDivisionError):
    pass


class VariantMismatch(NcalgError, TypeError):
    """Arithmetic attempted between scalars of different exact variants."""


class ZeroScalarQ(NcalgError):
    """q-number requested for q = 0."""


class AlphabetMismatch(NcalgError):
    pass


class SizeMismatch(NcalgError):
    pass


class NonOrientable(NcalgError):
    """A relation could not be turned into a degree-decreasing rule."""


class StepLimitExceeded(NcalgError):
    pass


class BadParameter(NcalgError, ValueError):
    pass


class NonQuadraticRelation(NcalgError):
    pass


class ParamMismatch(NcalgError):
    pass


class ZeroNorm(NcalgError, ZeroDivisionError):
    pass


class NonUnitAxis(NcalgError, ValueError):
    pass


class NonUnitVersor(NcalgError, ValueError):
    pass


class DimensionTooLarge(NcalgError):
    pass


class UnsupportedField(NcalgError):
    """Operation not implemented over the scalar field in use."""


class MissingAntipode(NcalgError):
    pass


class ActionTableIncomplete(NcalgError):
    pass


class VerificationFailed(NcalgError):
    pass


class SizeNotSquare(NcalgError):
    pass


class ZeroQ(NcalgError, ValueError):
    pass


class HeckeViolation(NcalgError):
    pass


class BadOrder(NcalgError, ValueError):
    pass


class ParseError(NcalgError, ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")"
        super().__init__(msg + loc)
