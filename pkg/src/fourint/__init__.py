"""Numerical Fourier analysis of measures: transforms, principal values,
the Wiener algebra on the circle, and checkers for the identities that
connect them."""
from .errors import (Cancelled, ConsistencyError, ConvergenceError, DomainError,
                     FourintError, MeasureError, ParseError)

__version__ = "0.1.0"

__all__ = ["Cancelled", "ConsistencyError", "ConvergenceError", "DomainError",
           "FourintError", "MeasureError", "ParseError", "__version__"]
