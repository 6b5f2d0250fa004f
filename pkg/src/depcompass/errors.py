"""Exception types shared across the package."""

from __future__ import annotations


class DepCompassError(Exception):
    """Base class for all package-specific errors."""


class UnknownDeclarationError(DepCompassError):
    """A referenced declaration name is not present in the graph."""

    def __init__(self, *names: str):
        self.names = tuple(names)
        label = ", ".join(names) if names else "<unnamed>"
        super().__init__(f"unknown declaration(s): {label}")


class DocumentFormatError(DepCompassError):
    """A document is syntactically malformed or violates the schema.

    ``field`` names the offending schema field when known; ``line``/``column``
    locate syntax errors in the raw text.
    """

    def __init__(self, message: str, *, field: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.field = field
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        if field is not None:
            message = f"{message} (field: {field})"
        super().__init__(message)


class InvalidGraphError(DepCompassError):
    """A graph failed structural validation; carries every violation found."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__(
            "graph validation failed: " + "; ".join(self.violations))


class PatternError(DepCompassError):
    """A name-matching glob uses constructs outside the supported subset."""
