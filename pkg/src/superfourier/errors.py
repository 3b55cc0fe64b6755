class SuperFourierError(Exception):
    """Base class for every error raised by superfourier."""


class ParseError(SuperFourierError, ValueError):
    pass


class DimensionMismatch(SuperFourierError, ValueError):
    pass


class NotInvertible(SuperFourierError, ArithmeticError):
    pass


class CapExceeded(SuperFourierError):
    """A desk-scale guardrail (closure size, candidate count, n^d) was hit."""

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what} = {value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


class InternalInconsistency(SuperFourierError, AssertionError):
    pass


class NotSymmetric(SuperFourierError):
    pass


class NotJSymmetric(SuperFourierError):
    pass


class UnitarityViolation(SuperFourierError):
    pass


class TheoryMismatch(SuperFourierError, ValueError):
    pass


class ZeroFunction(SuperFourierError, ValueError):
    pass


class BadParameter(SuperFourierError, ValueError):
    pass


class IncompleteDivisorData(SuperFourierError, ValueError):
    pass


class ArithmeticOverflow(SuperFourierError, OverflowError):
    pass
