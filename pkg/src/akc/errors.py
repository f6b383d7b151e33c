"""Exception hierarchy shared by all akc modules."""


class AkcError(Exception):
    """Base class for every diagnostic raised by akc."""


class StructureError(AkcError, ValueError):
    """Raised when objects with incompatible shapes or dimensions are combined."""


class PreconditionError(AkcError, ValueError):
    """Raised when an operation is called outside its documented domain."""


class InvalidAlgebraError(AkcError):
    """The structure equations violate d o d = 0 (the Jacobi identity).

    ``form`` is the first basis 1-form ``e^k`` (as an index) with ``d(d e^k) != 0``
    and ``value`` is the offending 3-form.
    """

    def __init__(self, message, index=None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


class ElaborationError(AkcError):
    """A parsed document could not be turned into valid structures.

    ``kind`` is a short machine-readable tag: ``jacobi``, ``j-square``,
    ``omega-not-closed``, ``omega-degenerate``, ``metric-not-positive``,
    ``not-compatible``, ``unknown-param``, ``j-underdetermined``.
    """

    def __init__(self, kind, message, line=None, column=None):
        loc = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{loc}{kind}: {message}")
        self.kind = kind
        self.detail = message
        self.line = line
        self.column = column


class DSLSyntaxError(AkcError):
    """Syntax or static error in a ``.lie`` document, with a 1-based position."""

    def __init__(self, message, line, column, expected=()):
        self.detail = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(self.expected) + ")"
        super().__init__(text)
