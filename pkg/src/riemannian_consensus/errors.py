"""Exception types shared across the package."""


class CutLocus(ValueError):
    """The logarithm map was requested at or beyond the cut locus."""


class DomainError(ValueError):
    """A formula was evaluated outside the range where it is defined."""


class DisconnectedGraph(ValueError):
    """A query that needs a connected graph received a disconnected one."""


class InfeasibleTopology(ValueError):
    """Generator parameters do not admit a graph of the requested family."""


class StepSizeWarning(UserWarning):
    """An explicit step size lies outside the admissible interval."""
