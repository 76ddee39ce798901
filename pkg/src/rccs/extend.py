"""Embed a common cause system of any size into an extension of a space.

Given a positively correlated pair (A, B) and a realizable admissible-star
set, every positive-weight atom is split into n children.  The split shares
depend only on which quadrant of the pair the atom lies in (A and B, A only,
B only, neither):

    r1_i = c_i d_i / p(A,B)            r2_i = c_i (a_i - d_i) / p(A, not B)
    r3_i = c_i (b_i - d_i) / p(not A, B)
    r4_i = c_i (1 - a_i - b_i + d_i) / p(not A, not B)

Collecting the index-i children of every atom yields the partition cell C_i.
The parent map induces an injective, complementation-preserving lattice
homomorphism h with p'(h(X)) = p(X) for every original event X, and the cell
conditionals come out exactly as c_i, a_i, b_i, d_i.

The extender refuses sets whose joint sum differs from p(A and B) instead of
renormalising: renormalisation would silently break measure preservation,
which is the defining property of an extension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .admissibility import AdmissibleStarSet, check_admissible_star
from .errors import NotRealizable, ZeroQuadrantMismatch
from .forks import verify_rccs
from .rationals import format_rational
from .spaces import (
    Event,
    Partition,
    ProbSpace,
    correlation_summary,
    probability,
    space_to_json,
    validate_partition,
)

ZERO = Fraction(0)
ONE = Fraction(1)

_EXHAUSTIVE_ATOM_LIMIT = 12  # beyond this, measure checks use a fixed sample
_SAMPLE_EVENTS = 64
_SAMPLE_SEED = 20240229


@dataclass(frozen=True)
class SplitWeights:
    """Per-cell split shares for the four quadrants; each row sums to 1."""

    r1: tuple[Fraction, ...]
    r2: tuple[Fraction, ...]
    r3: tuple[Fraction, ...]
    r4: tuple[Fraction, ...]

    def row(self, quadrant: int) -> tuple[Fraction, ...]:
        return (self.r1, self.r2, self.r3, self.r4)[quadrant]

    def to_json(self) -> dict:
        return {
            name: [format_rational(v) for v in row]
            for name, row in (("r1", self.r1), ("r2", self.r2), ("r3", self.r3), ("r4", self.r4))
        }


@dataclass(frozen=True)
class ExtensionResult:
    """A new space, the atom-level parent map, the embedded system, and weights."""

    new_space: ProbSpace
    parent_of: dict[str, str]
    cells: Partition
    weights: SplitWeights

    def image(self, event: Event) -> Event:
        """h(X): all children of the atoms of an original event X."""
        return self.new_space.event(
            label for label, parent in self.parent_of.items() if parent in event.members
        )

    def to_json(self, events: dict[str, Event] | None = None) -> dict:
        payload = space_to_json(self.new_space, events)
        payload["parent_of"] = dict(sorted(self.parent_of.items()))
        payload["cells"] = [sorted(cell.members) for cell in self.cells.cells]
        payload["split_weights"] = self.weights.to_json()
        return payload


def _quadrant_index(label: str, a_event: Event, b_event: Event) -> int:
    in_a, in_b = label in a_event, label in b_event
    if in_a and in_b:
        return 0
    if in_a:
        return 1
    if in_b:
        return 2
    return 3


def extend_with_rccs(
    space: ProbSpace,
    a_event: Event,
    b_event: Event,
    star: AdmissibleStarSet,
) -> ExtensionResult:
    """Split atoms quadrant-wise so the children carry a size-n system.

    Zero-weight atoms pass through unsplit into cell 1, keeping the embedding
    total and injective without touching any measure.  The constructed system
    is re-verified before returning, never assumed.
    """
    report = check_admissible_star(star)
    if not report.verdict:
        failed = [k for k, ok in report.conditions.items() if not ok]
        raise NotRealizable(f"set fails the admissible-star conditions: {failed}")
    summary = correlation_summary(space, a_event, b_event)
    if star.target.a != summary.a or star.target.b != summary.b:
        raise NotRealizable(
            f"set targets marginals ({star.target.a}, {star.target.b}) but the pair has "
            f"({summary.a}, {summary.b})"
        )
    quadrant_probs = summary.quadrants
    for name, q in zip(("A,B", "A,notB", "notA,B", "notA,notB"), quadrant_probs):
        if q == 0:
            raise ZeroQuadrantMismatch(
                f"quadrant {name} has probability zero; its split weights are undefined "
                "(strictly correlated pairs cannot carry a realizable embedding)"
            )
    if star.joint_sum != summary.p_ab:
        raise NotRealizable(
            f"joint sum {star.joint_sum} differs from p(A and B) = {summary.p_ab}; "
            "split weights would not sum to 1"
        )

    numerators = (
        tuple(c * d for c, d in zip(star.c, star.d)),
        tuple(c * (a - d) for c, a, d in zip(star.c, star.a, star.d)),
        tuple(c * (b - d) for c, b, d in zip(star.c, star.b, star.d)),
        tuple(
            c * (ONE - a - b + d)
            for c, a, b, d in zip(star.c, star.a, star.b, star.d)
        ),
    )
    rows = tuple(
        tuple(num / q for num in nums) for nums, q in zip(numerators, quadrant_probs)
    )
    weights = SplitWeights(*rows)
    for row in rows:
        if any(w <= 0 for w in row) or sum(row, ZERO) != ONE:
            raise NotRealizable("internal: split weight row fails positivity/normalisation")

    new_atoms: list[tuple[str, Fraction]] = []
    parent_of: dict[str, str] = {}
    cell_members: list[set[str]] = [set() for _ in range(star.n)]
    for label, weight in space.atoms:
        if weight == 0:
            child = f"{label}#1"
            new_atoms.append((child, ZERO))
            parent_of[child] = label
            cell_members[0].add(child)
            continue
        row = weights.row(_quadrant_index(label, a_event, b_event))
        for i, share in enumerate(row, start=1):
            child = f"{label}#{i}"
            new_atoms.append((child, weight * share))
            parent_of[child] = label
            cell_members[i - 1].add(child)

    new_space = ProbSpace(tuple(new_atoms))
    cells = validate_partition(new_space, [new_space.event(m) for m in cell_members])
    result = ExtensionResult(new_space=new_space, parent_of=parent_of, cells=cells, weights=weights)

    # Re-verify the embedded system rather than trusting the construction.
    image_a, image_b = result.image(a_event), result.image(b_event)
    if not verify_rccs(new_space, image_a, image_b, cells).verdict:
        raise NotRealizable("internal: constructed cells do not verify as a system")
    for i, cell in enumerate(cells.cells):
        if probability(new_space, cell) != star.c[i]:
            raise NotRealizable("internal: cell mass drifted from c_i")
    return result


@dataclass(frozen=True)
class HomomorphismReport:
    """Outcome of the embedding checks; failures are entries, not exceptions."""

    verdict: bool
    events_checked: int
    exhaustive: bool
    failures: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "events_checked": self.events_checked,
            "exhaustive": self.exhaustive,
            "failures": list(self.failures),
        }


def _all_events(space: ProbSpace) -> list[frozenset[str]]:
    labels = list(space.labels)
    out = []
    for mask in range(2 ** len(labels)):
        out.append(frozenset(l for i, l in enumerate(labels) if mask >> i & 1))
    return out


def _sample_events(space: ProbSpace) -> list[frozenset[str]]:
    labels = list(space.labels)
    rng = random.Random(_SAMPLE_SEED)
    sample = {frozenset(), frozenset(labels)}
    sample.update(frozenset([l]) for l in labels)
    sample.update(frozenset(labels[: k + 1]) for k in range(len(labels)))
    for _ in range(4 * _SAMPLE_EVENTS):
        if len(sample) >= _SAMPLE_EVENTS + 2 * len(labels):
            break
        sample.add(frozenset(l for l in labels if rng.random() < 0.5))
    return sorted(sample, key=lambda s: (len(s), sorted(s)))


def verify_homomorphism(result: ExtensionResult, original: ProbSpace) -> HomomorphismReport:
    """Check that the parent map induces a measure-preserving embedding.

    Measure preservation p'(h(X)) = p(X) is checked over the full event
    algebra when the original space has at most 12 atoms, otherwise over a
    fixed deterministic sample.  Lattice structure (complement, meet, join)
    and injectivity are checked on the atom family plus sampled pairs.
    """
    failures: list[str] = []
    children: dict[str, set[str]] = {label: set() for label in original.labels}
    for child, parent in result.parent_of.items():
        if parent not in children:
            failures.append(f"child {child!r} maps to unknown parent {parent!r}")
        else:
            children[parent].add(child)
    for parent, kids in children.items():
        if not kids:
            failures.append(f"atom {parent!r} has no children; embedding not injective")

    def image(members: frozenset[str]) -> Event:
        return result.new_space.event(
            child for child, parent in result.parent_of.items() if parent in members
        )

    exhaustive = len(original.labels) <= _EXHAUSTIVE_ATOM_LIMIT
    members_list = _all_events(original) if exhaustive else _sample_events(original)
    for members in members_list:
        event = original.event(members)
        if probability(result.new_space, image(members)) != probability(original, event):
            failures.append(f"measure not preserved on {sorted(members)}")

    full = frozenset(original.labels)
    for members in members_list:
        holds = image(full - members).members == (
            frozenset(result.new_space.labels) - image(members).members
        )
        if not holds:
            failures.append(f"complement not preserved on {sorted(members)}")

    pair_pool = members_list if len(members_list) <= 40 else members_list[:40]
    checked = len(members_list)
    for x, y in combinations(pair_pool, 2):
        checked += 1
        if image(x & y).members != (image(x).members & image(y).members):
            failures.append(f"meet not preserved on {sorted(x)} / {sorted(y)}")
        if image(x | y).members != (image(x).members | image(y).members):
            failures.append(f"join not preserved on {sorted(x)} / {sorted(y)}")
        if x != y and image(x).members == image(y).members:
            failures.append(f"not injective: {sorted(x)} and {sorted(y)} share an image")

    return HomomorphismReport(
        verdict=not failures,
        events_checked=checked,
        exhaustive=exhaustive,
        failures=tuple(failures),
    )
