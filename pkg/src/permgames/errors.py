"""Exception hierarchy shared by every module of the package."""


class PermGamesError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ValidationError(PermGamesError, ValueError):
    """An object violates a type invariant (ranges, arities, counts)."""


class StructuralError(ValidationError):
    """A play, strategy or edge set does not fit the arena it is used with."""


class ResourceLimitError(PermGamesError):
    """A solver was asked to exceed its configured work limit."""


class ContractError(PermGamesError):
    """A precondition of a certificate translation does not hold."""


class ParseError(ValidationError):
    """A text instance could not be parsed.

    ``line`` is the 1-based line number of the offending line, or ``None``
    when the problem concerns the file as a whole.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
