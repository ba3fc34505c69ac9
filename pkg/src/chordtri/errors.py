"""Exception types raised across the package."""


class ChordtriError(Exception):
    """Base class for all package errors."""


class DomainError(ChordtriError, ValueError):
    """An operation was applied outside its mathematical domain."""


class ContractError(ChordtriError, ValueError):
    """A caller violated the precondition of a splitting step."""


class ResourceError(ChordtriError, RuntimeError):
    """A configured size or iteration cap was exceeded."""


class ParseError(ChordtriError, ValueError):
    """Malformed polynomial-system text.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column
