"""Exception hierarchy shared by every module of the package."""


class FFDError(Exception):
    """Base class for all library errors."""


class FieldMismatch(FFDError, TypeError):
    pass


class RingMismatch(FFDError, TypeError):
    pass


class BadParameter(FFDError, ValueError):
    pass


class ZeroInput(FFDError, ValueError):
    pass


class ZeroPolynomial(ZeroInput):
    pass


class UnitInput(FFDError, ValueError):
    pass


class BadSplit(FFDError, ValueError):
    pass


class InadmissibleRing(FFDError, ValueError):
    pass


class PositiveDimensional(FFDError, ArithmeticError):
    """The ansatz ideal has infinitely many solutions over the closure."""


class TooLarge(FFDError, RuntimeError):
    """An enumeration budget would be exceeded."""


class BoundViolation(FFDError, AssertionError):
    """A factorization count exceeded a proven upper bound; indicates a bug."""


class ParseError(FFDError, ValueError):
    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class ExprSyntaxError(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass


class ExponentOverflow(ParseError):
    pass
