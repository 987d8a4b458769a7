"""Exception hierarchy shared by every gwlab module."""

from __future__ import annotations


class GWLabError(Exception):
    """Base class for all library errors."""


class DivisionByZero(GWLabError, ZeroDivisionError):
    pass


class TowerMismatch(GWLabError, ValueError):
    pass


class ZeroArgument(GWLabError, ValueError):
    pass


class NoTopStep(GWLabError, ValueError):
    pass


class NotANonSquare(GWLabError, ValueError):
    """Raised when a tower step would adjoin the root of a square."""


class TowerTooTall(GWLabError, ValueError):
    pass


class DegenerateForm(GWLabError, ValueError):
    pass


class NotSymmetric(GWLabError, ValueError):
    pass


class NotTorsion(GWLabError, ValueError):
    pass


class NotAUnit(GWLabError, ValueError):
    pass


class NotInFiltration(GWLabError, ValueError):
    pass


class NotInF2(NotInFiltration):
    pass


class BadTraceForm(GWLabError, ValueError):
    pass


class ArityMismatch(GWLabError, ValueError):
    pass


class IndexOutOfRange(GWLabError, IndexError):
    pass


class OddDegree(GWLabError, ValueError):
    pass


class ExtractionMismatch(GWLabError, ArithmeticError):
    """The group-ring certificate of a logarithm failed; always a bug."""


class UndecidedEquality(GWLabError, ArithmeticError):
    """An operation needed a yes/no answer but equality came back Unknown."""


class UnknownField(GWLabError, ValueError):
    pass


class GWSyntaxError(GWLabError, ValueError):
    def __init__(self, message: str, text: str | None = None, pos: int = 0) -> None:
        self.text = text
        self.pos = pos
        if text is not None:
            message = f"{message} at position {pos}: {text[:pos]}^{text[pos:]}"
        super().__init__(message)
