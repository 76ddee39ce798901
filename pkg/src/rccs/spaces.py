"""Finite classical probability spaces with exact rational weights.

Atoms are labelled outcomes carrying :class:`fractions.Fraction` weights that
sum to exactly one.  Events are sets of atom labels, the event algebra is the
full power set, and every operation (probability, conditioning, correlation)
is exact: equality tests are decidable and nothing is ever rounded.

All values are immutable after construction; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ForeignEvent,
    InvalidTarget,
    NotAPartition,
    SpaceFormatError,
    UnknownEvent,
    ZeroMeasureCondition,
)
from .rationals import format_rational, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ProbSpace:
    """Ordered atoms ``(label, weight)`` with nonnegative weights summing to 1.

    Zero-weight atoms are allowed at construction; conditioning on a
    zero-measure event is an error rather than silently undefined.
    """

    atoms: tuple[tuple[str, Fraction], ...]
    _weights: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.atoms:
            raise SpaceFormatError("a probability space needs at least one atom")
        weights: dict[str, Fraction] = {}
        total = ZERO
        for label, weight in self.atoms:
            if not isinstance(label, str) or not label:
                raise SpaceFormatError(f"atom label must be a nonempty string, got {label!r}")
            if label in weights:
                raise SpaceFormatError(f"duplicate atom label {label!r}")
            if not isinstance(weight, Fraction):
                raise SpaceFormatError(f"atom {label!r} weight must be a Fraction")
            if weight < 0:
                raise SpaceFormatError(f"atom {label!r} has negative weight {weight}")
            weights[label] = weight
            total += weight
        if total != ONE:
            raise SpaceFormatError(f"atom weights sum to {total}, expected exactly 1")
        object.__setattr__(self, "_weights", weights)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, Fraction | int | str]]) -> "ProbSpace":
        return cls(tuple((label, parse_rational(w)) for label, w in pairs))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.atoms)

    def weight(self, label: str) -> Fraction:
        try:
            return self._weights[label]
        except KeyError:
            raise UnknownEvent(f"no atom labelled {label!r}") from None

    def event(self, members: Iterable[str]) -> "Event":
        return Event(self, frozenset(members))

    @property
    def full(self) -> "Event":
        return Event(self, frozenset(self._weights))

    @property
    def empty(self) -> "Event":
        return Event(self, frozenset())


@dataclass(frozen=True)
class Event:
    """A subset of the atoms of one space, closed under the usual algebra."""

    space: ProbSpace
    members: frozenset[str]

    def __post_init__(self) -> None:
        stray = self.members - set(self.space.labels)
        if stray:
            raise SpaceFormatError(f"event references unknown atoms: {sorted(stray)}")

    def complement(self) -> "Event":
        return Event(self.space, frozenset(self.space.labels) - self.members)

    def __invert__(self) -> "Event":
        return self.complement()

    def __and__(self, other: "Event") -> "Event":
        self._same_space(other)
        return Event(self.space, self.members & other.members)

    def __or__(self, other: "Event") -> "Event":
        self._same_space(other)
        return Event(self.space, self.members | other.members)

    def __sub__(self, other: "Event") -> "Event":
        self._same_space(other)
        return Event(self.space, self.members - other.members)

    def __contains__(self, label: str) -> bool:
        return label in self.members

    def __len__(self) -> int:
        return len(self.members)

    def _same_space(self, other: "Event") -> None:
        if self.space != other.space:
            raise ForeignEvent("events belong to different spaces")


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint events covering the whole space, in a fixed order."""

    cells: tuple[Event, ...]

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def space(self) -> ProbSpace:
        return self.cells[0].space


@dataclass(frozen=True)
class CorrelationSummary:
    """Marginals, joint, covariance gamma and the four quadrant masses of a pair."""

    a: Fraction
    b: Fraction
    p_ab: Fraction
    gamma: Fraction
    quadrants: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self) -> None:
        if self.gamma != self.p_ab - self.a * self.b:
            raise InvalidTarget("gamma must equal p(A and B) - p(A)p(B) exactly")
        if sum(self.quadrants, ZERO) != ONE:
            raise InvalidTarget("quadrant masses must sum to 1")
        if self.a != self.quadrants[0] + self.quadrants[1]:
            raise InvalidTarget("p(A) must equal the mass of its two quadrants")

    @classmethod
    def from_marginals(cls, a: Fraction, b: Fraction, p_ab: Fraction) -> "CorrelationSummary":
        """Build a summary from (p(A), p(B), p(A and B)), validating feasibility."""
        quadrants = (p_ab, a - p_ab, b - p_ab, ONE - a - b + p_ab)
        if any(q < 0 for q in quadrants) or not (0 <= a <= 1 and 0 <= b <= 1):
            raise InvalidTarget(
                f"no probability assignment has p(A)={a}, p(B)={b}, p(A and B)={p_ab}"
            )
        return cls(a=a, b=b, p_ab=p_ab, gamma=p_ab - a * b, quadrants=quadrants)

    @property
    def positively_correlated(self) -> bool:
        return self.gamma > 0

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "pAB": format_rational(self.p_ab),
            "gamma": format_rational(self.gamma),
            "quadrants": [format_rational(q) for q in self.quadrants],
        }


def probability(space: ProbSpace, e: Event) -> Fraction:
    """Exact probability of an event: the sum of its atoms' weights."""
    if e.space != space:
        raise ForeignEvent("event belongs to a different space")
    return sum((space.weight(label) for label in e.members), ZERO)


def conditional(space: ProbSpace, x: Event, given: Event) -> Fraction:
    """p(x | given), defined only when the condition has positive measure."""
    denom = probability(space, given)
    if denom == 0:
        raise ZeroMeasureCondition("cannot condition on an event of probability zero")
    return probability(space, x & given) / denom


def correlation_summary(space: ProbSpace, a_event: Event, b_event: Event) -> CorrelationSummary:
    """Exact correlation summary for a pair of events."""
    q1 = probability(space, a_event & b_event)
    q2 = probability(space, a_event - b_event)
    q3 = probability(space, b_event - a_event)
    q4 = ONE - q1 - q2 - q3
    a = q1 + q2
    b = q1 + q3
    return CorrelationSummary(a=a, b=b, p_ab=q1, gamma=q1 - a * b, quadrants=(q1, q2, q3, q4))


def validate_partition(space: ProbSpace, cells: Sequence[Event]) -> Partition:
    """Check disjointness and coverage; report which condition fails."""
    if not cells:
        raise NotAPartition("gap", "no cells given")
    seen: set[str] = set()
    for cell in cells:
        if cell.space != space:
            raise ForeignEvent("partition cell belongs to a different space")
        overlap = seen & cell.members
        if overlap:
            raise NotAPartition("overlap", f"atoms {sorted(overlap)} appear in two cells")
        seen |= cell.members
    missing = set(space.labels) - seen
    if missing:
        raise NotAPartition("gap", f"atoms {sorted(missing)} not covered")
    return Partition(tuple(cells))


def as_partition(space: ProbSpace, cells: Partition | Sequence[Event]) -> Partition:
    """Accept an existing partition or validate a raw cell sequence."""
    if isinstance(cells, Partition):
        return cells
    return validate_partition(space, cells)


# --- JSON space format -------------------------------------------------------
#
# {"atoms": [{"label": "w1", "weight": "3/8"}, ...],
#  "events": {"A": ["w1", "w2"], ...}}


def space_to_json(space: ProbSpace, events: Mapping[str, Event] | None = None) -> dict:
    payload: dict = {
        "atoms": [
            {"label": label, "weight": format_rational(weight)} for label, weight in space.atoms
        ]
    }
    payload["events"] = (
        {name: sorted(event.members) for name, event in events.items()} if events else {}
    )
    return payload


def space_from_json(payload: Mapping) -> tuple[ProbSpace, dict[str, Event]]:
    """Parse the JSON space format; rejects weights that do not sum to 1."""
    if not isinstance(payload, Mapping) or not isinstance(payload.get("atoms"), list):
        raise SpaceFormatError("space JSON must be an object with an 'atoms' list")
    atoms = []
    for entry in payload["atoms"]:
        try:
            label, weight = entry["label"], entry["weight"]
        except (TypeError, KeyError):
            raise SpaceFormatError(f"malformed atom entry {entry!r}") from None
        atoms.append((label, parse_rational(weight)))
    space = ProbSpace(tuple(atoms))
    events: dict[str, Event] = {}
    for name, members in (payload.get("events") or {}).items():
        stray = set(members) - set(space.labels)
        if stray:
            raise SpaceFormatError(f"event {name!r} references unknown atoms {sorted(stray)}")
        events[name] = space.event(members)
    return space, events


def resolve_event(space: ProbSpace, events: Mapping[str, Event], name: str) -> Event:
    try:
        return events[name]
    except KeyError:
        raise UnknownEvent(f"event {name!r} is not defined in the space file") from None
