"""Shared fixtures and deterministic random generators for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rccs import (
    AdmissibleStarSet,
    Event,
    ProbSpace,
    correlation_summary,
)


@pytest.fixture
def s4() -> ProbSpace:
    return ProbSpace.from_pairs([("w1", "3/8"), ("w2", "1/8"), ("w3", "1/8"), ("w4", "3/8")])


@pytest.fixture
def s4_pair(s4) -> tuple[ProbSpace, Event, Event]:
    return s4, s4.event(["w1", "w2"]), s4.event(["w1", "w3"])


@pytest.fixture
def canonical_star(s4_pair) -> AdmissibleStarSet:
    """The size-2 set embedding S4's pair: c=(1/2,1/2), a=(1/8,7/8), b=(1/6,5/6)."""
    space, a, b = s4_pair
    return AdmissibleStarSet(
        n=2,
        a=(Fraction(1, 8), Fraction(7, 8)),
        b=(Fraction(1, 6), Fraction(5, 6)),
        c=(Fraction(1, 2), Fraction(1, 2)),
        d=(Fraction(1, 48), Fraction(35, 48)),
        target=correlation_summary(space, a, b),
    )


def random_space(rng: random.Random, max_atoms: int = 8, allow_zero: bool = False) -> ProbSpace:
    """A random space with exact weights k_i / K summing to one."""
    count = rng.randint(2, max_atoms)
    while True:
        numerators = [
            rng.randint(0, 12) if allow_zero and rng.random() < 0.15 else rng.randint(1, 12)
            for _ in range(count)
        ]
        total = sum(numerators)
        if total > 0:
            break
    return ProbSpace(
        tuple((f"w{i}", Fraction(k, total)) for i, k in enumerate(numerators, start=1))
    )


def random_event(rng: random.Random, space: ProbSpace, proper: bool = True) -> Event:
    labels = list(space.labels)
    while True:
        members = {label for label in labels if rng.random() < 0.5}
        if not proper or 0 < len(members) < len(labels):
            return space.event(members)


def random_correlated_pair(
    rng: random.Random, space: ProbSpace, attempts: int = 200
) -> tuple[Event, Event] | None:
    """A pair of proper events with strictly positive covariance, if one is found."""
    for _ in range(attempts):
        a = random_event(rng, space)
        b = random_event(rng, space)
        if correlation_summary(space, a, b).gamma > 0:
            return a, b
    return None


def random_partition(rng: random.Random, space: ProbSpace, n: int):
    """A random n-cell partition of the atoms (cells may have zero mass)."""
    labels = list(space.labels)
    if n > len(labels):
        return None
    while True:
        code = [rng.randrange(n) for _ in labels]
        if len(set(code)) == n:
            break
    cells: list[set[str]] = [set() for _ in range(n)]
    for label, idx in zip(labels, code):
        cells[idx].add(label)
    return [space.event(c) for c in cells]


def fork_space(
    p_c: Fraction,
    a_given_c: Fraction,
    a_given_not: Fraction,
    b_given_c: Fraction,
    b_given_not: Fraction,
) -> tuple[ProbSpace, Event, Event, Event]:
    """An 8-atom space with A, B independent inside C and inside its complement."""
    atoms = []
    for side, mass, pa, pb in (
        ("c", p_c, a_given_c, b_given_c),
        ("n", 1 - p_c, a_given_not, b_given_not),
    ):
        atoms.extend(
            [
                (f"{side}.ab", mass * pa * pb),
                (f"{side}.a", mass * pa * (1 - pb)),
                (f"{side}.b", mass * (1 - pa) * pb),
                (f"{side}.o", mass * (1 - pa) * (1 - pb)),
            ]
        )
    space = ProbSpace(tuple(atoms))
    a = space.event(["c.ab", "c.a", "n.ab", "n.a"])
    b = space.event(["c.ab", "c.b", "n.ab", "n.b"])
    c = space.event(["c.ab", "c.a", "c.b", "c.o"])
    return space, a, b, c


def random_fork_parameters(rng: random.Random) -> tuple[Fraction, ...]:
    """Interior fork parameters with both probability gaps strictly positive."""
    den = rng.choice([8, 12, 16, 24])
    p_c = Fraction(rng.randint(1, den - 1), den)
    lo_a, hi_a = sorted(rng.sample(range(1, den), 2))
    lo_b, hi_b = sorted(rng.sample(range(1, den), 2))
    return (
        p_c,
        Fraction(hi_a, den),
        Fraction(lo_a, den),
        Fraction(hi_b, den),
        Fraction(lo_b, den),
    )
