"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: input-shaped problems exit 2,
resource limits exit 3, predicate failures exit 1.
"""


class TreeLaddersError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(TreeLaddersError):
    """Foreign node ids, comparable pair where incomparable required, etc."""


class InvalidTreeError(TreeLaddersError):
    """Tree construction or parsing violated a tree invariant."""


class InvalidLadderError(TreeLaddersError):
    """Ladder system invariant violation; carries the offending node."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class MissingEtaError(TreeLaddersError):
    """Coherence checked on a system with nonempty supp but no eta."""


class MissingLadderEntryError(TreeLaddersError):
    """Ordinal ladder has no (nonempty) rung for a required label."""

    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class PreconditionError(TreeLaddersError):
    """A documented precondition (e.g. transitivity) failed verification."""


class InvalidPathError(TreeLaddersError):
    """Vertex list is not a path of the given graph."""


class InvalidChallengeError(TreeLaddersError):
    """Builder challenge malformed or too poor to start the construction."""


class ExhaustedError(TreeLaddersError):
    """No leaf slot available for the new node."""


class GenerationFailedError(TreeLaddersError):
    """Rejection sampling exceeded its attempt budget."""


class ResourceLimitError(TreeLaddersError):
    """Exact computation refused beyond the configured budget.

    Carries the best bounds known at the point of giving up.
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
