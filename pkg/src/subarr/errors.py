"""Exception hierarchy shared by every module of the package."""


class ArrangementError(Exception):
    """Base class for all errors raised by this package."""


class AmbientMismatch(ArrangementError, ValueError):
    """Two subspaces (or a matrix and a subspace) live in different ambient spaces."""


class DuplicateSubspace(ArrangementError, ValueError):
    pass


class AmbientSubspace(ArrangementError, ValueError):
    """An arrangement member equals the whole ambient space."""


class OverlappingSubsets(ArrangementError, ValueError):
    pass


class InvalidChainIndex(ArrangementError, IndexError):
    pass


class AtomCapExceeded(ArrangementError):
    """The arrangement has more atoms than the configured enumeration cap."""


class NotGeometric(ArrangementError):
    pass


class PreconditionFailed(ArrangementError):
    pass


class DisagreementError(ArrangementError, AssertionError):
    """Equivalent criteria disagreed on an arrangement where they must agree.

    This always signals an implementation bug, never bad input.
    """


class ParseError(ArrangementError, ValueError):
    pass


class NonCentralInput(ParseError):
    """The input carried an affine ``offset``; only central arrangements are supported."""
