"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An operation was called outside its documented domain."""


class ParseError(ValueError):
    """Malformed matrix text. Carries the 1-based line and column of the fault."""

    def __init__(self, message, line, column=None):
        self.line = line
        self.column = column
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class NumericalFailure(RuntimeError):
    """A floating point routine did not reach the requested accuracy."""


class SearchExhausted(RuntimeError):
    """A trace search ran past its horizon. ``failure`` holds the SearchFailure record."""

    def __init__(self, failure, message=None):
        self.failure = failure
        super().__init__(message or f"no qualifying power up to horizon {failure.horizon}")
