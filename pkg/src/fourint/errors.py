"""Exception types shared across the package."""


class FourintError(Exception):
    """Base class for all package errors."""


class ParseError(FourintError):
    """Malformed expression source.

    ``position`` is the 0-based character offset where parsing failed and
    ``expected`` lists the tokens that would have been accepted there.
    """

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at offset {position}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


class DomainError(FourintError, ArithmeticError):
    """Expression evaluated outside its natural domain."""


class MeasureError(FourintError, ValueError):
    """Ill-formed measure or coefficient data."""


class ConvergenceError(FourintError):
    """A limit did not stabilise within the evaluation budget.

    The offending :class:`~fourint.quad.PVResult` is kept on ``result``.
    """

    def __init__(self, message, result=None):
        self.result = result
        super().__init__(message)


class ConsistencyError(FourintError):
    """Two independent evaluation routes disagree beyond tolerance."""


class Cancelled(FourintError):
    """Raised when a cancellation token fires during a long evaluation."""
