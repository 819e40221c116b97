"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input errors -> 2, capacity errors -> 3.
"""


class NCTowerError(Exception):
    """Base class for all package errors."""


class RejectedInputError(NCTowerError, ValueError):
    """Input violates an operation's precondition (bad element, non-normal subgroup, ...)."""


class NotAHomomorphismError(RejectedInputError):
    """Generator assignment fails the graph-of-homomorphism test."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(RejectedInputError):
    """A checker was applied to an instance outside its hypotheses."""


class CapacityError(NCTowerError):
    """A configured enumeration bound was exceeded.

    ``bound`` carries the limit that was hit so callers can retry with more room.
    """

    def __init__(self, message, bound=None, context=None):
        super().__init__(message)
        self.bound = bound
        self.context = context


class InternalConsistencyError(NCTowerError, AssertionError):
    """A constructed object failed one of its own invariants (a bug, never user error)."""
