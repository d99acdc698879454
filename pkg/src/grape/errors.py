"""Exception hierarchy shared by the library and the CLI."""


class GrapeError(Exception):
    """Base class for all library errors."""


class GraphError(GrapeError, ValueError):
    """Invalid graph construction (self-loop, parallel edge, bad weight)."""


class DataError(GrapeError, ValueError):
    """Malformed input data. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SchemaError(DataError):
    """A diagram document does not match the expected schema."""


class EnumerationLimitError(GrapeError, RuntimeError):
    """Enumeration produced more sets than the configured cap."""

    def __init__(self, feature: str, cap: int):
        self.feature = feature
        self.cap = cap
        super().__init__(
            f"feature {feature!r} produced more than {cap} sets on one snapshot; "
            "raise GRAPE_MAX_SETS or shrink the graph"
        )


class SizeLimitError(GrapeError, ValueError):
    """Input exceeds the size an exhaustive oracle accepts."""
