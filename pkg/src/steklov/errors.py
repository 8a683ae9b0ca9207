"""Exception hierarchy.

Every error the library raises derives from :class:`SteklovError`; the CLI maps
all of them to exit code 2.
"""


class SteklovError(Exception):
    pass


class GraphError(SteklovError, ValueError):
    pass


class DuplicateVertex(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class UnknownEndpoint(GraphError):
    pass


class NonPositiveWeight(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


class NotASubgraph(GraphError):
    pass


class NotAComb(GraphError):
    pass


class WedgePointOnBoundary(GraphError):
    pass


# the verifiers speak of a "bad wedge point"; same condition
BadWedgePoint = WedgePointOnBoundary


class NotBoundaryVertex(GraphError):
    pass


class SingularInterior(SteklovError, ValueError):
    """An interior component has no edge to the boundary or the zero set."""

    def __init__(self, message, component=()):
        super().__init__(message)
        self.component = tuple(component)


class ToleranceAmbiguity(SteklovError):
    pass


class BadParameter(SteklovError, ValueError):
    pass


class RootFindingFailure(SteklovError):
    pass


class BadCertificate(SteklovError, ValueError):
    pass


class GraphFormatError(SteklovError, ValueError):
    pass
