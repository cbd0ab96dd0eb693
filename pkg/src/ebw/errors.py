"""Exception types shared across the package."""


class EbwError(Exception):
    """Base class for errors raised by this package."""


class AdmissibilityError(EbwError, ValueError):
    """Parameters cannot describe the requested object (congruence, integrality, field order)."""


class StructuralError(EbwError, ValueError):
    """Malformed input: bad block, zero row or column, dimension mismatch."""


class InfeasibleError(EbwError):
    """An exhaustive computation exceeds its enumeration or node budget."""


class ParseError(EbwError, ValueError):
    """Unreadable design or alist file; carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
