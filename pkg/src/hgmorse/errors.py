"""Exception hierarchy shared across the package."""


class SolverError(Exception):
    """Base class for all package errors."""


class InvalidParameter(SolverError):
    """A precondition on an input value was violated."""


class NoBoundState(SolverError):
    """No normalizable bound state exists for the requested configuration."""


class NonConvergence(SolverError):
    """An iterative procedure failed to converge within its budget."""


class GridTooCoarse(SolverError):
    """The requested number of levels exceeds what the grid can resolve."""


class ParseError(SolverError):
    """A data file could not be parsed; the message carries the line number."""
