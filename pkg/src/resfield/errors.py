"""Exception hierarchy shared by every module of the package."""


class ResFieldError(Exception):
    """Base class for all library errors."""


class DescriptorMismatch(ResFieldError, TypeError):
    """Operands live over different coefficient fields."""


class DivisionByZero(ResFieldError, ZeroDivisionError):
    pass


class InfiniteEnumeration(ResFieldError):
    """Exhaustive enumeration was requested for an infinite field."""


class NotInValuationRing(ResFieldError, ValueError):
    pass


class IndeterminateResidue(ResFieldError, ArithmeticError):
    pass


class NotInfinitesimal(ResFieldError, ValueError):
    """The second argument of S_{a,b} must have positive valuation."""


class ArityMismatch(ResFieldError, ValueError):
    pass


class ParseError(ResFieldError, ValueError):
    """Malformed concrete syntax.  ``pos`` is a 0-based character offset."""

    def __init__(self, message, pos=None, text=None):
        self.message = message
        self.pos = pos
        self.text = text
        super().__init__(self._render())

    def _render(self):
        if self.pos is None:
            return self.message
        return f"{self.message} at position {self.pos}"


class SortError(ResFieldError, TypeError):
    """A term is used at the wrong sort."""

    def __init__(self, message, subterm=None):
        self.subterm = subterm
        super().__init__(message)


class UnboundVariable(ResFieldError, KeyError):
    def __str__(self):
        return f"unbound variable {self.args[0]!r}"


class UnsupportedQuantifier(ResFieldError):
    """The formula lies outside every decidable fragment the evaluator implements."""


class NotNormalizable(UnsupportedQuantifier):
    """A universally quantified k-variable occurs outside polynomial positions."""


class UndefinedValue(ResFieldError, ArithmeticError):
    """Value-group arithmetic with no meaning, such as -oo or oo - oo."""
