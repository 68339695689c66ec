"""Exception types raised across the package."""


class GrapeshotError(Exception):
    """Base class for all package errors."""


class GraphError(GrapeshotError, ValueError):
    """Malformed graph input (duplicate ids, dangling endpoints, bad rotation)."""


class NotAGrape(GrapeshotError):
    """The graph has topological circumference at least 2 (or is disconnected)."""


class NoEssentialVertex(GrapeshotError):
    """The graph is an interval, a circle or a point."""


class IndexOutOfRange(GrapeshotError, IndexError):
    """A local half-edge or loop index is outside the labeling at a vertex."""


class DegenerateGraph(GrapeshotError, ValueError):
    """The pair (l, m) does not describe a graph with an essential vertex."""


class TorsionPresent(GrapeshotError):
    """Integral homology has torsion in a slice that a computation needs free."""

    def __init__(self, degree, weight, torsion):
        self.degree = degree
        self.weight = weight
        self.torsion = list(torsion)
        super().__init__(
            f"torsion {self.torsion} in H_{degree} at weight {weight}")
