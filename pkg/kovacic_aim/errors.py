"""
Error types raised by the engine.

Everything derives from ``KovacicError`` (a ``ValueError``), so callers that
only care about bad input can catch a single class. Inadmissible candidates
are reported as data, never raised.
"""

from typing import List, Optional


class KovacicError(ValueError):
    """Base class for every engine error."""


# --- parser ---------------------------------------------------------------

class ParseError(KovacicError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class ExprSyntaxError(ParseError):
    def __init__(self, message: str, position: int, expected: Optional[List[str]] = None):
        self.expected = sorted(expected or [])
        if self.expected:
            message = f"{message}; expected one of: {', '.join(self.expected)}"
        super().__init__(message, position)


class UndeclaredSymbol(ParseError):
    def __init__(self, name: str, position: int):
        self.name = name
        super().__init__(f"undeclared symbol '{name}'", position)


class NonIntegerExponent(ParseError):
    pass


class NonLaurentDivision(ParseError):
    pass


# --- algebra ----------------------------------------------------------------

class NotInvertible(KovacicError):
    pass


class DimensionMismatch(KovacicError):
    pass


class ConcreteModeRequired(KovacicError):
    def __init__(self, operation: str):
        super().__init__(f"{operation} needs rational coefficients; specialize the parameters first")


# --- kovacic ----------------------------------------------------------------

class InvalidEquation(KovacicError):
    pass


class NeedsExtensionError(KovacicError):
    """The computation would leave the rationals (a square root is irrational)."""


class NonSquareLeading(NeedsExtensionError):
    pass


class NonSquareAtZero(NeedsExtensionError):
    pass


class WrongPoleOrder(KovacicError):
    pass


class AuxiliaryMismatch(KovacicError):
    pass


# --- aim / variety ------------------------------------------------------------

class CapExceeded(KovacicError):
    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"universal obstruction of order {n} exceeds the cap {cap}; "
            f"raise the cap or evaluate the obstruction directly"
        )


class NonPolynomialObstruction(KovacicError):
    pass
