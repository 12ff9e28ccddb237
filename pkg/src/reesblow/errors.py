"""Exception types raised across the package."""


class ReesError(Exception):
    """Base class for every error raised by reesblow."""


class PolySyntaxError(ReesError, SyntaxError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at column {pos + 1}"
        super().__init__(message)


class UnknownVariable(ReesError, KeyError):
    def __str__(self) -> str:
        return f"unknown variable {self.args[0]!r}"


class ZeroCharacteristicDivision(ReesError, ZeroDivisionError):
    """Division by a denominator that vanishes in the coefficient field."""


class ContextMismatch(ReesError, ValueError):
    """Operands live in different polynomial rings."""


class DivisionByZeroGenerator(ReesError, ValueError):
    pass


class NonHomogeneousError(ReesError, ValueError):
    pass


class UnboundedPiece(ReesError, ValueError):
    """A graded piece would be infinite without an exponent bound."""


class NotDegreeOne(ReesError, ValueError):
    pass


class NegativeWeights(ReesError, ValueError):
    pass


class NonPositiveWeights(ReesError, ValueError):
    pass


class NotNGraded(NegativeWeights):
    pass


class IllFormedPayload(ReesError, ValueError):
    """Variable images do not define a ring map."""
