"""Exception types raised by the engine."""


class JetsymError(Exception):
    """Base class for every engine error."""


class DegenerateExpression(JetsymError, ZeroDivisionError):
    pass


class NotPolynomial(JetsymError):
    pass


class PoleAtPoint(JetsymError, ZeroDivisionError):
    pass


class SubstitutionCycle(JetsymError):
    pass


class ParseError(JetsymError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownSymbol(ParseError):
    pass


class NotPointGenerator(JetsymError):
    pass


class NotQuasiLinear(JetsymError):
    pass


class UnsupportedGenerator(JetsymError):
    pass


class InvalidInvariants(JetsymError):
    pass


class InvalidCandidate(JetsymError):
    pass
