"""Exception hierarchy shared by every module."""


class OGTError(Exception):
    pass


class GraphError(OGTError, ValueError):
    """Invalid graph data: self-loops, digons, out-of-range endpoints, bad parameters."""


class SizeCapError(OGTError):
    """A size guard was exceeded (vertex cap, census cap, enumeration guard)."""


class CyclicGraphError(GraphError):
    """An operation that needs an acyclic graph was handed one with a directed cycle."""


class NotTournamentError(GraphError):
    pass


class DominationError(OGTError):
    """A vertex set that had to be dominated was not.

    ``subset`` holds the offending set as a sorted tuple of vertices.
    """

    def __init__(self, subset, message=None):
        self.subset = tuple(sorted(subset))
        super().__init__(message or f"vertex set {list(self.subset)} is not dominated")


class CacheError(OGTError):
    pass
