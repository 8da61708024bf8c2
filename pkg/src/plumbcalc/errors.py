"""Exception hierarchy shared across the package.

Two failure families matter to callers (and to the CLI exit codes):
bad input (exit 1) and internal consistency violations (exit 2).  The
latter signal an implementation bug, never a property of the input.
"""


class PlumbingError(ValueError):
    """Base class for input-level errors."""


class ParseError(PlumbingError):
    """Malformed graph file.  Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphStructureError(PlumbingError):
    """Operation applied to a graph that violates its precondition."""


class SingularFormError(PlumbingError):
    """Linear solve against a singular intersection form."""


class InternalCheckError(RuntimeError):
    """An exact self-check failed; indicates a bug, not bad input."""
