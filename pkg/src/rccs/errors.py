"""Exception hierarchy shared by every module of the package.

All domain failures derive from :class:`RccsError` so callers (and the HTTP
service) can map them uniformly.  Input/format problems derive from
:class:`SpaceFormatError`, which the CLI reports with a distinct exit code.
"""


class RccsError(Exception):
    """Base class for every error raised by this package."""


class SpaceFormatError(RccsError):
    """Malformed input: bad rational literal, duplicate label, mass not one."""


class UnknownEvent(SpaceFormatError):
    """A named event is not present in the space's event table."""


class ForeignEvent(RccsError):
    """An event was combined with a probability space it does not belong to."""


class ZeroMeasureCondition(RccsError):
    """Conditioning on an event of probability zero (or one, for forks)."""


class NotAPartition(RccsError):
    """Candidate cells overlap or fail to cover the space."""

    def __init__(self, kind: str, detail: str = ""):
        super().__init__(f"not a partition ({kind}){': ' + detail if detail else ''}")
        self.kind = kind  # "overlap" or "gap"


class SizeTooSmall(RccsError):
    """A common cause system needs at least two cells."""


class InvalidTarget(RccsError):
    """The requested marginals/joint do not describe a probability assignment."""


class NotCorrelated(RccsError):
    """The target pair is not positively correlated."""


class StrictCorrelationUnsupported(RccsError):
    """Realizable construction needs all four quadrant probabilities positive."""


class NoFeasibleParameters(RccsError):
    """The constructive parameter search exhausted its retry schedule."""


class SingularSolve(RccsError):
    """The joint-sum constraint is constant in the unknown; no unique solution."""


class DegenerateTail(RccsError):
    """Leading cell masses already consume the whole unit mass."""


class NotRealizable(RccsError):
    """The admissible-star set cannot be embedded as a system over this space."""


class ZeroQuadrantMismatch(RccsError):
    """A quadrant of the pair has probability zero, so split weights are undefined."""


class BudgetExceeded(RccsError):
    """Brute-force enumeration exceeded its configured budget."""
