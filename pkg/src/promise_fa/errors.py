"""Exception hierarchy shared by every module."""


class AutomatonError(Exception):
    """Base class for all errors raised by the package."""


class InvalidMachine(AutomatonError, ValueError):
    """A machine violates one of its structural invariants."""


class InvalidParameter(AutomatonError, ValueError):
    pass


class UnknownSymbol(AutomatonError, ValueError):
    def __init__(self, symbol, alphabet):
        super().__init__(f"symbol {symbol!r} is not in alphabet {list(alphabet)}")
        self.symbol = symbol


class AlphabetMismatch(AutomatonError, ValueError):
    pass


class WitnessError(AutomatonError):
    """Error carrying a word that demonstrates the problem."""

    def __init__(self, message, witness):
        super().__init__(f"{message} (witness: {witness!r})")
        self.witness = witness


class OverlappingComponents(WitnessError):
    pass


class UnionUndefined(WitnessError):
    pass


class WordTooShort(AutomatonError, ValueError):
    pass


class NonSquare(AutomatonError, ValueError):
    pass


class NonTerminating(AutomatonError):
    pass


class BeyondEnumerationBound(AutomatonError):
    pass


class NotRegularFlavor(AutomatonError, TypeError):
    pass


class SearchBudgetExceeded(AutomatonError):
    pass


class UnknownTheoremId(AutomatonError, KeyError):
    pass


class SchemaError(AutomatonError, ValueError):
    """Raised by deserializers; the message names the first offending field."""
