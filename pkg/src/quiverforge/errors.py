"""Exception hierarchy shared by every module."""


class QuiverForgeError(Exception):
    """Base class for all library errors."""


class MalformedInputError(QuiverForgeError, ValueError):
    """Input document or object is structurally invalid."""


class PreconditionError(QuiverForgeError, ValueError):
    """An operation was called outside its domain.

    ``witness`` carries a JSON-friendly object that explains the failure
    (a cycle, an arrow id, a vertex pair, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InfiniteDimensionError(PreconditionError):
    """Path enumeration hit the length cutoff with surviving basis elements."""


class InvariantError(QuiverForgeError, AssertionError):
    """A structural guarantee that should hold by construction was violated."""
