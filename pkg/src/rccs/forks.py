"""Verifiers for conjunctive forks and common cause systems.

A conjunctive fork for a pair (A, B) is a third event C of interior
probability that screens the pair off on both sides (the conditional
correlation vanishes given C and given its complement) while raising the
probability of both A and B.  A common cause system generalises the fork to a
partition of arbitrary size n >= 2: every cell screens the pair off and the
conditional probabilities are pairwise co-monotone across cells.

Also provides the exact covariance decomposition across a partition.  Note
the convention: the 1/2 factor applies only to the ordered double sum; the
conditional-dependence sum enters with coefficient 1.  The one-cell partition
forces this (there the double sum vanishes and the single dependence term is
the whole covariance), so a 1/2 on that term cannot be part of a valid
identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import SizeTooSmall, ZeroMeasureCondition
from .rationals import format_rational
from .spaces import (
    Event,
    Partition,
    ProbSpace,
    as_partition,
    conditional,
    probability,
)

DECOMPOSITION_NOTE = (
    "covariance = (1/2) * sum over ordered cell pairs of p(Zi)p(Zj)"
    "[p(X|Zi)-p(X|Zj)][p(Y|Zi)-p(Y|Zj)]  +  sum over cells of "
    "p(Zi)[p(X,Y|Zi)-p(X|Zi)p(Y|Zi)]; the dependence sum carries "
    "coefficient 1 (the one-cell partition forces it), even though the "
    "half-coefficient form is sometimes displayed."
)


@dataclass(frozen=True)
class ForkReport:
    """Outcome of the five fork conditions, with exact residuals.

    ``conditions`` is keyed "eq1".."eq5": interior cause probability, the two
    screening equations, and the two positive probability differences.
    """

    cause_probability: Fraction
    conditions: dict[str, bool]
    residuals: dict[str, Fraction]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "cause_probability": format_rational(self.cause_probability),
            "conditions": dict(self.conditions),
            "residuals": {k: format_rational(v) for k, v in self.residuals.items()},
            "verdict": self.verdict,
        }


def verify_fork(space: ProbSpace, a_event: Event, b_event: Event, cause: Event) -> ForkReport:
    """Evaluate the conjunctive-fork conditions exactly.

    Raises ZeroMeasureCondition when the candidate cause has probability 0 or
    1, since conditioning on it (or its complement) is then undefined.
    """
    p_c = probability(space, cause)
    if p_c == 0 or p_c == 1:
        raise ZeroMeasureCondition(
            f"fork cause must have probability strictly between 0 and 1, got {p_c}"
        )
    comp = cause.complement()
    ab = a_event & b_event
    screen_c = conditional(space, ab, cause) - conditional(space, a_event, cause) * conditional(
        space, b_event, cause
    )
    screen_cbar = conditional(space, ab, comp) - conditional(space, a_event, comp) * conditional(
        space, b_event, comp
    )
    gap_a = conditional(space, a_event, cause) - conditional(space, a_event, comp)
    gap_b = conditional(space, b_event, cause) - conditional(space, b_event, comp)
    conditions = {
        "eq1": True,  # interior probability already enforced above
        "eq2": screen_c == 0,
        "eq3": screen_cbar == 0,
        "eq4": gap_a > 0,
        "eq5": gap_b > 0,
    }
    return ForkReport(
        cause_probability=p_c,
        conditions=conditions,
        residuals={
            "screening_given_cause": screen_c,
            "screening_given_complement": screen_cbar,
            "gap_a": gap_a,
            "gap_b": gap_b,
        },
        verdict=all(conditions.values()),
    )


@dataclass(frozen=True)
class RccsReport:
    """Cell-by-cell outcome of the common-cause-system conditions.

    ``positivity`` holds one boolean per cell (eq7: nonzero cell mass),
    ``screening_residuals`` one exact residual per cell (eq8; None when the
    cell mass is zero and the conditional is undefined), and
    ``ordering_products`` one entry per unordered cell pair (eq9), each a
    triple ``(i, j, product)`` with 1-based indices.
    """

    size: int
    positivity: tuple[bool, ...]
    screening_residuals: tuple[Fraction | None, ...]
    ordering_products: tuple[tuple[int, int, Fraction | None], ...]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "conditions": {
                "eq7": all(self.positivity),
                "eq8": all(r == 0 for r in self.screening_residuals),
                "eq9": all(p is not None and p > 0 for _, _, p in self.ordering_products),
            },
            "positivity": list(self.positivity),
            "screening_residuals": [
                None if r is None else format_rational(r) for r in self.screening_residuals
            ],
            "ordering_products": [
                {"i": i, "j": j, "value": None if p is None else format_rational(p)}
                for i, j, p in self.ordering_products
            ],
            "verdict": self.verdict,
        }


def verify_rccs(
    space: ProbSpace,
    a_event: Event,
    b_event: Event,
    partition: Partition | Sequence[Event],
) -> RccsReport:
    """Evaluate the common-cause-system conditions exactly over a partition.

    The verdict is true iff every cell has nonzero mass, every screening
    residual is exactly 0, and every pairwise ordering product is > 0.
    """
    part = as_partition(space, partition)
    n = part.n
    if n < 2:
        raise SizeTooSmall(f"a common cause system needs at least 2 cells, got {n}")
    ab = a_event & b_event
    masses = [probability(space, cell) for cell in part.cells]
    positivity = tuple(m != 0 for m in masses)

    cond_a: list[Fraction | None] = []
    cond_b: list[Fraction | None] = []
    residuals: list[Fraction | None] = []
    for cell, mass in zip(part.cells, masses):
        if mass == 0:
            cond_a.append(None)
            cond_b.append(None)
            residuals.append(None)
            continue
        pa = conditional(space, a_event, cell)
        pb = conditional(space, b_event, cell)
        cond_a.append(pa)
        cond_b.append(pb)
        residuals.append(conditional(space, ab, cell) - pa * pb)

    products: list[tuple[int, int, Fraction | None]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if cond_a[i] is None or cond_a[j] is None:
                products.append((i + 1, j + 1, None))
            else:
                products.append(
                    (i + 1, j + 1, (cond_a[i] - cond_a[j]) * (cond_b[i] - cond_b[j]))
                )

    verdict = (
        all(positivity)
        and all(r == 0 for r in residuals)
        and all(p is not None and p > 0 for _, _, p in products)
    )
    return RccsReport(
        size=n,
        positivity=positivity,
        screening_residuals=tuple(residuals),
        ordering_products=tuple(products),
        verdict=verdict,
    )


class Decomposition(NamedTuple):
    """Exact covariance split: covariance = comonotone_sum + defect_sum."""

    pair_covariance: Fraction
    comonotone_sum: Fraction
    defect_sum: Fraction

    def to_json(self) -> dict:
        return {
            "pair_covariance": format_rational(self.pair_covariance),
            "comonotone_sum": format_rational(self.comonotone_sum),
            "defect_sum": format_rational(self.defect_sum),
            "identity_holds": self.pair_covariance == self.comonotone_sum + self.defect_sum,
            "note": DECOMPOSITION_NOTE,
        }


def correlation_decomposition(
    space: ProbSpace,
    x_event: Event,
    y_event: Event,
    partition: Partition | Sequence[Event],
) -> Decomposition:
    """Split cov(X, Y) across a positive-measure partition, exactly.

    When every cell screens the pair off the defect sum vanishes term by term
    and the covariance equals the co-monotone double sum alone.
    """
    part = as_partition(space, partition)
    masses = [probability(space, cell) for cell in part.cells]
    if any(m == 0 for m in masses):
        raise ZeroMeasureCondition("decomposition needs every cell to have positive mass")
    xy = x_event & y_event
    px = [conditional(space, x_event, cell) for cell in part.cells]
    py = [conditional(space, y_event, cell) for cell in part.cells]
    pxy = [conditional(space, xy, cell) for cell in part.cells]

    half = Fraction(1, 2)
    comonotone = sum(
        (
            half * masses[i] * masses[j] * (px[i] - px[j]) * (py[i] - py[j])
            for i in range(part.n)
            for j in range(part.n)
        ),
        Fraction(0),
    )
    defect = sum(
        (masses[i] * (pxy[i] - px[i] * py[i]) for i in range(part.n)), Fraction(0)
    )
    covariance = probability(space, xy) - probability(space, x_event) * probability(space, y_event)
    return Decomposition(covariance, comonotone, defect)
