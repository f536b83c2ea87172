"""Exception hierarchy shared by all backends."""


class QwsError(Exception):
    """Base class for every error raised by this package."""


class NotInvertible(QwsError, ArithmeticError):
    pass


class ShapeMismatch(QwsError, ValueError):
    pass


class SizeLimitExceeded(QwsError):
    pass


class BadTargets(QwsError, ValueError):
    pass


class DegenerateB(QwsError, ValueError):
    pass


class CayleySingular(QwsError, ArithmeticError):
    pass


class NonSymplecticResult(QwsError):
    pass


class LegendreSingular(QwsError, ArithmeticError):
    pass


class NotClifford(QwsError):
    pass


class InvariantViolated(QwsError):
    pass


class NoGaussianForm(QwsError):
    pass


class BackendRefused(QwsError):
    pass


class ParseError(QwsError, ValueError):
    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class BadDimension(ParseError):
    pass


class BadTarget(ParseError):
    pass
