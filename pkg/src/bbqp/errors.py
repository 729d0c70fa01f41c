"""Exception hierarchy shared by every bbqp module."""


class BBQPError(ValueError):
    """Base class; ``code`` is a short stable identifier used by the CLI."""

    code = "error"


class ShapeError(BBQPError):
    code = "shape"


class TooLargeError(BBQPError):
    code = "too-large"


class ReductionError(BBQPError):
    code = "M-too-small"


class StaleStateError(BBQPError):
    code = "stale-state"


class OverflowGuardError(BBQPError):
    code = "overflow"


class FormatError(BBQPError):
    """Malformed instance or solution text.

    ``line`` and ``column`` are 1-based and point at the offending token
    when known.
    """

    code = "format"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
