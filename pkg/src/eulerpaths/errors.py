"""Exception hierarchy shared by the graph, decomposition and CLI layers."""


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class SelfLoopRejected(GraphError, ValueError):
    pass


class VertexOutOfRange(GraphError, IndexError):
    pass


class EdgeNotLive(GraphError, KeyError):
    pass


class DomainError(GraphError, ValueError):
    """Parameter outside the domain of a generator or bound formula."""


class MissingWeight(GraphError, KeyError):
    pass


class PreconditionViolated(GraphError, ValueError):
    """A heavy-path search was requested on an input that cannot support it.

    ``clause`` names the violated requirement (``"terminal"``, ``"weight"``
    or ``"component"``).
    """

    def __init__(self, clause: str, message: str) -> None:
        super().__init__(f"{clause}: {message}")
        self.clause = clause


class InvalidGraph(GraphError, ValueError):
    """Graph is neither Eulerian nor a single-defect graph."""

    def __init__(self, state) -> None:
        self.state = state
        super().__init__(f"invalid graph: {state.describe()}")


class EmptyGraph(GraphError, ValueError):
    pass


class EmptyDecomposition(GraphError, ValueError):
    pass


class InvariantViolation(GraphError, AssertionError):
    """An internal invariant of the decomposition failed at runtime."""


class TooLarge(GraphError, ValueError):
    """Input exceeds the size guard of an exhaustive search."""


class ParseError(GraphError, ValueError):
    pass
