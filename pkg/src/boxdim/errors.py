"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input data or parameters fall outside what an operation accepts."""


class ParseError(DomainError):
    """A point file could not be parsed.

    ``line`` is 1-based; ``column`` is the 1-based field index when the
    failure is tied to a single field.
    """

    def __init__(self, message, line, column=None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
