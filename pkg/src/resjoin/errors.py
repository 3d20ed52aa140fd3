"""Exception types raised across the package."""


class ResJoinError(Exception):
    """Base class for all package errors."""


class GraphError(ResJoinError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IndexOutOfRange(GraphError):
    pass


class BadParams(GraphError):
    pass


class ParseError(GraphError):
    pass


class BadIndex(ResJoinError, IndexError):
    pass


class LinalgError(ResJoinError, ArithmeticError):
    pass


class NotSymmetric(LinalgError):
    pass


class NotPositiveDefinite(LinalgError):
    pass


class SingularShift(LinalgError):
    pass


class SingularL3(LinalgError):
    pass


class NotLaplacian(LinalgError):
    pass


class Disconnected(ResJoinError):
    """Raised when a computation needs a connected graph."""


class NotRegular(ResJoinError):
    """Raised when the edge-join closed form is asked for an irregular G1."""
