"""Admissible and admissible-star number sets, plus the cancellation diagnosis.

An *admissible* set for a target pair consists of 3n numbers (cell masses c_i
and per-cell conditionals a_i, b_i) reproducing the target marginals and the
joint *in expectation*: sum of a_i b_i c_i equals p(A and B).  That joint
condition is necessary but not sufficient for cell-wise screening: positive
and negative per-cell dependence defects can cancel in the sum.  The
*admissible-star* conditions close the gap by carrying the joint conditionals
d_i explicitly and demanding d_i = a_i b_i in every cell.

``realize_counterexample`` builds the bundled two-cell configuration whose
defects are -1/24 and +1/24: their mass-weighted sum is exactly zero, so the
legacy admissible conditions all pass while screening fails in both cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import InvalidTarget, SpaceFormatError, ZeroMeasureCondition
from .rationals import format_rational, parse_rational
from .spaces import (
    CorrelationSummary,
    Event,
    Partition,
    ProbSpace,
    as_partition,
    conditional,
    correlation_summary,
    probability,
    validate_partition,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class AdmissibleSet:
    """Legacy 3n-number candidate (cell masses c, conditionals a and b)."""

    n: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    target: CorrelationSummary

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidTarget("admissible sets need n >= 2")
        for name, values in (("a", self.a), ("b", self.b), ("c", self.c)):
            if len(values) != self.n:
                raise InvalidTarget(f"list {name} has {len(values)} entries, expected {self.n}")


@dataclass(frozen=True)
class AdmissibleStarSet:
    """4n-number candidate: masses c, conditionals a, b and joint conditionals d."""

    n: int
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    c: tuple[Fraction, ...]
    d: tuple[Fraction, ...]
    target: CorrelationSummary

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidTarget("admissible-star sets need n >= 2")
        for name, values in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)):
            if len(values) != self.n:
                raise InvalidTarget(f"list {name} has {len(values)} entries, expected {self.n}")

    @property
    def joint_sum(self) -> Fraction:
        """sum of c_i d_i; equals p(A and B) for any set read off real events."""
        return sum((ci * di for ci, di in zip(self.c, self.d)), ZERO)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "a": [format_rational(v) for v in self.a],
            "b": [format_rational(v) for v in self.b],
            "c": [format_rational(v) for v in self.c],
            "d": [format_rational(v) for v in self.d],
            "target": {
                "a": format_rational(self.target.a),
                "b": format_rational(self.target.b),
                "pAB": format_rational(self.target.p_ab),
            },
        }

    @classmethod
    def from_json(cls, payload: dict) -> "AdmissibleStarSet":
        try:
            n = int(payload["n"])
            lists = {k: tuple(parse_rational(v) for v in payload[k]) for k in "abcd"}
            target = payload["target"]
            summary = CorrelationSummary.from_marginals(
                parse_rational(target["a"]),
                parse_rational(target["b"]),
                parse_rational(target["pAB"]),
            )
        except (KeyError, TypeError) as exc:
            raise SpaceFormatError(f"malformed admissible-star set JSON: {exc}") from None
        return cls(n=n, a=lists["a"], b=lists["b"], c=lists["c"], d=lists["d"], target=summary)


@dataclass(frozen=True)
class ConditionReport:
    """Named boolean conditions plus a conjunction verdict."""

    conditions: dict[str, bool]
    verdict: bool
    joint_sum: Fraction | None = None
    joint_matches_target: bool | None = None

    def to_json(self) -> dict:
        payload: dict = {"conditions": dict(self.conditions), "verdict": self.verdict}
        if self.joint_sum is not None:
            payload["joint_sum"] = format_rational(self.joint_sum)
            payload["joint_matches_target"] = self.joint_matches_target
        return payload


def _ordering_ok(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    n = len(a)
    return all(
        (a[i] - a[j]) * (b[i] - b[j]) > 0 for i in range(n) for j in range(i + 1, n)
    )


def check_admissible(s: AdmissibleSet) -> ConditionReport:
    """Evaluate the legacy admissibility conditions; all failures are entries."""
    conditions = {
        "marginal_a": sum((ai * ci for ai, ci in zip(s.a, s.c)), ZERO) == s.target.a,
        "marginal_b": sum((bi * ci for bi, ci in zip(s.b, s.c)), ZERO) == s.target.b,
        "joint": sum((ai * bi * ci for ai, bi, ci in zip(s.a, s.b, s.c)), ZERO)
        == s.target.p_ab,
        "unit_mass": sum(s.c, ZERO) == ONE,
        "ordering": _ordering_ok(s.a, s.b),
        # legacy bounds are deliberately non-strict on a and b
        "value_bounds": all(0 <= v <= 1 for v in (*s.a, *s.b)),
        "cell_bounds": all(0 < ci < 1 for ci in s.c),
    }
    return ConditionReport(conditions=conditions, verdict=all(conditions.values()))


def check_admissible_star(s: AdmissibleStarSet) -> ConditionReport:
    """Evaluate the admissible-star conditions (strict interior bounds).

    The auxiliary quantity ``joint_sum`` (sum of c_i d_i) is reported next to
    the verdict, not folded into it: the star conditions do not constrain it,
    but embedding the set over a concrete space requires it to match the
    target joint.
    """
    conditions = {
        "marginal_a": sum((ai * ci for ai, ci in zip(s.a, s.c)), ZERO) == s.target.a,
        "marginal_b": sum((bi * ci for bi, ci in zip(s.b, s.c)), ZERO) == s.target.b,
        "unit_mass": sum(s.c, ZERO) == ONE,
        "products": all(di == ai * bi for ai, bi, di in zip(s.a, s.b, s.d)),
        "ordering": _ordering_ok(s.a, s.b),
        "value_bounds": all(0 < v < 1 for v in (*s.a, *s.b, *s.d)),
        "cell_bounds": all(0 < ci < 1 for ci in s.c),
    }
    joint = s.joint_sum
    return ConditionReport(
        conditions=conditions,
        verdict=all(conditions.values()),
        joint_sum=joint,
        joint_matches_target=joint == s.target.p_ab,
    )


def extract_star_set(
    space: ProbSpace,
    a_event: Event,
    b_event: Event,
    partition: Partition | Sequence[Event],
) -> AdmissibleStarSet:
    """Read the 4n identification numbers off a concrete partition.

    c_i = p(C_i), a_i = p(A|C_i), b_i = p(B|C_i), d_i = p(A and B|C_i).
    Every cell must have positive mass for the conditionals to exist.
    """
    part = as_partition(space, partition)
    ab = a_event & b_event
    c, a, b, d = [], [], [], []
    for cell in part.cells:
        mass = probability(space, cell)
        if mass == 0:
            raise ZeroMeasureCondition("cannot extract conditionals from a zero-mass cell")
        c.append(mass)
        a.append(conditional(space, a_event, cell))
        b.append(conditional(space, b_event, cell))
        d.append(conditional(space, ab, cell))
    return AdmissibleStarSet(
        n=part.n,
        a=tuple(a),
        b=tuple(b),
        c=tuple(c),
        d=tuple(d),
        target=correlation_summary(space, a_event, b_event),
    )


@dataclass(frozen=True)
class DiagnosisReport:
    """Per-cell dependence defects and the two verdicts they separate.

    ``cell_defects`` are the mass-weighted terms p(Z_i)[p(X,Y|Z_i) -
    p(X|Z_i)p(Y|Z_i)]; ``residuals`` are the unweighted per-cell screening
    residuals.  ``total`` is the exact sum of the weighted terms: it is the
    quantity whose vanishing the legacy joint condition amounts to, while
    screening demands every individual residual be zero.
    """

    cell_defects: tuple[Fraction, ...]
    residuals: tuple[Fraction, ...]
    total: Fraction
    admissible_verdict: bool
    screening_verdict: bool

    def to_json(self) -> dict:
        return {
            "cell_defects": [format_rational(v) for v in self.cell_defects],
            "residuals": [format_rational(v) for v in self.residuals],
            "total": format_rational(self.total),
            "admissible_verdict": self.admissible_verdict,
            "screening_verdict": self.screening_verdict,
        }


def diagnose_cancellation(
    space: ProbSpace,
    x_event: Event,
    y_event: Event,
    partition: Partition | Sequence[Event],
) -> DiagnosisReport:
    """Show how nonzero per-cell defects can sum to zero across a partition.

    Works for any positive-mass partition, including the one-cell case; the
    admissible verdict is False there since those conditions need n >= 2.
    """
    part = as_partition(space, partition)
    xy = x_event & y_event
    masses, cond_x, cond_y, residuals = [], [], [], []
    for cell in part.cells:
        mass = probability(space, cell)
        if mass == 0:
            raise ZeroMeasureCondition("diagnosis needs every cell to have positive mass")
        masses.append(mass)
        cond_x.append(conditional(space, x_event, cell))
        cond_y.append(conditional(space, y_event, cell))
        residuals.append(conditional(space, xy, cell) - cond_x[-1] * cond_y[-1])
    defects = tuple(m * r for m, r in zip(masses, residuals))
    admissible = False
    if part.n >= 2:
        legacy = AdmissibleSet(
            n=part.n,
            a=tuple(cond_x),
            b=tuple(cond_y),
            c=tuple(masses),
            target=correlation_summary(space, x_event, y_event),
        )
        admissible = check_admissible(legacy).verdict
    return DiagnosisReport(
        cell_defects=defects,
        residuals=tuple(residuals),
        total=sum(defects, ZERO),
        admissible_verdict=admissible,
        screening_verdict=all(r == 0 for r in residuals),
    )


class CellSpec(NamedTuple):
    """One partition cell given by its mass and conditional probabilities."""

    label: str
    mass: Fraction
    a_given: Fraction
    b_given: Fraction
    ab_given: Fraction


class RealizedConfiguration(NamedTuple):
    space: ProbSpace
    event_a: Event
    event_b: Event
    partition: Partition


def realize_cells(cells: Sequence[CellSpec]) -> RealizedConfiguration:
    """Build a space whose cells reproduce the given conditionals exactly.

    Each cell contributes four atoms (one per quadrant of the pair) with
    weights mass * (ab, a-ab, b-ab, 1-a-b+ab).  A negative quadrant weight
    means the requested conditionals are not probabilities of any space.
    """
    atoms: list[tuple[str, Fraction]] = []
    a_labels: set[str] = set()
    b_labels: set[str] = set()
    cell_labels: list[set[str]] = []
    for spec in cells:
        quadrants = (
            ("ab", spec.ab_given),
            ("a", spec.a_given - spec.ab_given),
            ("b", spec.b_given - spec.ab_given),
            ("o", ONE - spec.a_given - spec.b_given + spec.ab_given),
        )
        members: set[str] = set()
        for suffix, share in quadrants:
            if share < 0:
                raise InvalidTarget(
                    f"cell {spec.label!r}: conditionals give negative mass to quadrant {suffix}"
                )
            label = f"{spec.label}.{suffix}"
            atoms.append((label, spec.mass * share))
            members.add(label)
            if suffix in ("ab", "a"):
                a_labels.add(label)
            if suffix in ("ab", "b"):
                b_labels.add(label)
        cell_labels.append(members)
    space = ProbSpace(tuple(atoms))
    partition = validate_partition(space, [space.event(m) for m in cell_labels])
    return RealizedConfiguration(
        space=space,
        event_a=space.event(a_labels),
        event_b=space.event(b_labels),
        partition=partition,
    )


def realize_counterexample() -> RealizedConfiguration:
    """The bundled two-cell cancellation configuration as an 8-atom space.

    Cell masses 1/2 and 1/2; conditionals p(A|C1)=1/4, p(A|C2)=1/8,
    p(B|C1)=1/3, p(B|C2)=1/6, p(A,B|C1)=1/24, p(A,B|C2)=1/16.  The two
    dependence defects are -1/24 and +1/24 per cell (-1/48 and +1/48 once
    weighted), so they cancel exactly in the legacy joint condition while
    screening fails in both cells.
    """
    half = Fraction(1, 2)
    return realize_cells(
        [
            CellSpec("c1", half, Fraction(1, 4), Fraction(1, 3), Fraction(1, 24)),
            CellSpec("c2", half, Fraction(1, 8), Fraction(1, 6), Fraction(1, 16)),
        ]
    )
