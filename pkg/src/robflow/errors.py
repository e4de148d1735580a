class RobflowError(Exception):
    """Base class for package errors."""


class NetworkError(RobflowError, ValueError):
    """Malformed network data (bad arcs, unbalanced scenarios, overflow)."""


class FlowStructureError(RobflowError, ValueError):
    """A flow does not match its network's arcs or scenario count."""


class BudgetExceeded(RobflowError):
    """A configured search or label budget would be exceeded."""


class PreconditionError(RobflowError, ValueError):
    """The instance is outside the class a solver handles."""


class NotSeriesParallel(RobflowError):
    """Raised by decomposition when the digraph is not series-parallel.

    ``witness`` lists one representative arc id per edge of the reduced
    multigraph that could not be collapsed further.
    """

    def __init__(self, message: str, witness: tuple[int, ...] = ()):
        super().__init__(message)
        self.witness = witness


class ParseError(RobflowError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line
