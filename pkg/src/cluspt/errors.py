"""Exception hierarchy shared by all solvers and the CLI."""


class ClusteredTreeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInstanceError(ClusteredTreeError, ValueError):
    """Malformed input: bad JSON, broken partition, malformed edges.

    ``violations`` carries the individual problems found, ``field`` the
    location in the input document when known.
    """

    def __init__(self, message, violations=(), field=None):
        super().__init__(message)
        self.violations = tuple(violations)
        self.field = field


class InfeasibleInstanceError(ClusteredTreeError):
    """No clustered spanning tree (or clustered path) exists."""


class DisconnectedGraphError(ClusteredTreeError, ValueError):
    """A spanning structure was requested on a disconnected graph."""


class InstanceTooLargeError(ClusteredTreeError, ValueError):
    """A user-configurable size budget (oracle, bit budget, brute force) is exceeded."""


class BudgetExceededError(ClusteredTreeError):
    """An internal work limit was hit while solving."""
