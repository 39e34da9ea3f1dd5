"""Exception hierarchy shared by all modules."""


class AutomataError(Exception):
    """Base class for every error raised by this package."""


class DigitError(AutomataError, ValueError):
    """A digit is outside ``{0, ..., d-1}`` or a word is malformed."""


class RadixMismatchError(AutomataError, ValueError):
    pass


class NotDivisibleError(AutomataError, ArithmeticError):
    """Raised when dividing by ``d**k`` a value whose low ``k`` digits are not all zero."""


class MachineError(AutomataError, ValueError):
    """A machine violates a structural invariant (totality, reachability, names)."""


class NotZeroStableError(AutomataError, ValueError):
    """A Moore machine changes its output along a chain of 0-transitions."""


class GuardViolation(AutomataError, AssertionError):
    """An internal bound that the theory guarantees has been exceeded."""


class ParseError(AutomataError, ValueError):
    """Syntax error in a machine file or literal, with an optional position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)
