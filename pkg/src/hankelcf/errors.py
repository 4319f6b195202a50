"""Exception types shared across the package."""


class HankelCFError(Exception):
    """Base class for all errors raised by hankelcf."""


class ZeroConstantTerm(HankelCFError, ZeroDivisionError):
    pass


class NotContractive(HankelCFError):
    """The fixed-point map has no unique power-series solution."""


class ZeroLeadingCoefficient(HankelCFError, ZeroDivisionError):
    pass


class WrongForm(HankelCFError, ValueError):
    pass


class IndexOutOfOrbit(HankelCFError, IndexError):
    pass


class ZeroDivisor(HankelCFError, ZeroDivisionError):
    pass


class InsufficientOrder(HankelCFError, ValueError):
    pass


class TooLarge(HankelCFError, ValueError):
    pass


class TooShort(HankelCFError, ValueError):
    pass


class UnboundVariable(HankelCFError, KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class GFSyntaxError(HankelCFError, ValueError):
    """Parse failure; ``position`` is the 0-based character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownCharacter(GFSyntaxError):
    pass


class DegenerateBindings(HankelCFError, ValueError):
    pass


class UnknownPreset(HankelCFError, ValueError):
    pass
