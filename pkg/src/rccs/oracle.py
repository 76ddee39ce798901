"""Brute-force enumeration oracle over small spaces.

Deliberately independent of the primary verifier: conditionals are recomputed
from raw atom weight sums with local integer-pair rational helpers, and every
comparison is done by cross-multiplication, so a shared bug cannot hide.
Partitions are enumerated as restricted-growth strings in lexicographic
order, which makes truncation under a budget reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, Sequence

from .errors import BudgetExceeded
from .spaces import Event, Partition, ProbSpace, validate_partition

# --- local rational helpers (num, den) with den > 0 --------------------------


def _norm(num: int, den: int) -> tuple[int, int]:
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    return (num // g, den // g) if g else (0, 1)


def _add(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return _norm(x[0] * y[1] + y[0] * x[1], x[1] * y[1])


def _mul(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return _norm(x[0] * y[0], x[1] * y[1])


def _sub(x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    return _add(x, (-y[0], y[1]))


def _sign(x: tuple[int, int]) -> int:
    return (x[0] > 0) - (x[0] < 0)


@dataclass(frozen=True)
class SearchBudget:
    max_atoms: int = 10
    max_partition_size: int = 5
    max_partitions: int = 200_000

    def __post_init__(self) -> None:
        if min(self.max_atoms, self.max_partition_size, self.max_partitions) <= 0:
            raise BudgetExceeded("budget limits must all be positive")


def stirling2(k: int, n: int) -> int:
    """Number of partitions of a k-set into exactly n nonempty blocks."""
    if n < 0 or k < 0:
        return 0
    if k == n == 0:
        return 1
    if n == 0 or n > k:
        return 0
    row = [1] + [0] * n
    for _ in range(k):
        new = [0] * (n + 1)
        for blocks in range(1, n + 1):
            new[blocks] = row[blocks - 1] + blocks * row[blocks]
        row = new
        row[0] = 0
    return row[n]


def restricted_growth_strings(k: int, n: int) -> Iterator[tuple[int, ...]]:
    """All length-k restricted-growth strings using exactly n block indices.

    Lexicographic order; string position j holds the block index of item j.
    """
    if n < 1 or n > k:
        return
    code = [0] * k

    def fill(pos: int, used: int) -> Iterator[tuple[int, ...]]:
        if pos == k:
            if used == n:
                yield tuple(code)
            return
        if used + (k - pos) < n:  # cannot reach n blocks any more
            return
        top = min(used, n - 1)
        for value in range(top + 1):
            code[pos] = value
            yield from fill(pos + 1, used if value < used else used + 1)

    yield from fill(1, 1)  # position 0 is always block 0


def _blocks(labels: Sequence[str], code: tuple[int, ...], n: int) -> list[frozenset[str]]:
    members: list[set[str]] = [set() for _ in range(n)]
    for label, idx in zip(labels, code):
        members[idx].add(label)
    return [frozenset(m) for m in members]


def _weights_table(space: ProbSpace) -> dict[str, tuple[int, int]]:
    return {
        label: _norm(weight.numerator, weight.denominator) for label, weight in space.atoms
    }


def _mass(table: dict[str, tuple[int, int]], members: frozenset[str]) -> tuple[int, int]:
    total = (0, 1)
    for label in members:
        total = _add(total, table[label])
    return total


def _check_cells(
    table: dict[str, tuple[int, int]],
    a_members: frozenset[str],
    b_members: frozenset[str],
    cells: Sequence[frozenset[str]],
) -> bool:
    """Screening and co-monotonicity straight from atom weight sums."""
    if len(cells) < 2:
        return False
    wz, wa, wb = [], [], []
    for cell in cells:
        z = _mass(table, cell)
        if z[0] == 0:
            return False
        az = _mass(table, cell & a_members)
        bz = _mass(table, cell & b_members)
        abz = _mass(table, cell & a_members & b_members)
        # p(AB|Z) = p(A|Z)p(B|Z)  <=>  w(ABZ) * w(Z) = w(AZ) * w(BZ)
        if _mul(abz, z) != _mul(az, bz):
            return False
        wz.append(z)
        wa.append(az)
        wb.append(bz)
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            # sign of p(A|Zi) - p(A|Zj) via cross-multiplication (w(Z) > 0)
            da = _sign(_sub(_mul(wa[i], wz[j]), _mul(wa[j], wz[i])))
            db = _sign(_sub(_mul(wb[i], wz[j]), _mul(wb[j], wz[i])))
            if da * db <= 0:
                return False
    return True


def verify_by_enumeration(
    space: ProbSpace,
    a_event: Event,
    b_event: Event,
    partition: Partition | Sequence[Event],
) -> bool:
    """Independent re-check of the system conditions from raw weight sums.

    Returns False (never raises) for candidates that are not systems,
    including one-cell partitions.
    """
    cells = partition.cells if isinstance(partition, Partition) else tuple(partition)
    return _check_cells(
        _weights_table(space),
        a_event.members,
        b_event.members,
        [cell.members for cell in cells],
    )


def enumerate_rccs(
    space: ProbSpace,
    a_event: Event,
    b_event: Event,
    n: int,
    budget: SearchBudget | None = None,
) -> list[Partition]:
    """All n-block partitions of the atoms that form a system for (A, B).

    Exhaustive within the budget; returns [] when n exceeds the atom count.
    """
    budget = budget or SearchBudget()
    labels = space.labels
    if len(labels) > budget.max_atoms:
        raise BudgetExceeded(
            f"space has {len(labels)} atoms, budget allows {budget.max_atoms}"
        )
    if n > budget.max_partition_size:
        raise BudgetExceeded(
            f"partition size {n} exceeds budget limit {budget.max_partition_size}"
        )
    if n < 2 or n > len(labels):
        return []
    if stirling2(len(labels), n) > budget.max_partitions:
        raise BudgetExceeded(
            f"{stirling2(len(labels), n)} candidate partitions exceed the "
            f"budget of {budget.max_partitions}"
        )
    table = _weights_table(space)
    found: list[Partition] = []
    examined = 0
    for code in restricted_growth_strings(len(labels), n):
        examined += 1
        if examined > budget.max_partitions:
            raise BudgetExceeded(f"examined more than {budget.max_partitions} partitions")
        blocks = _blocks(labels, code, n)
        if _check_cells(table, a_event.members, b_event.members, blocks):
            found.append(validate_partition(space, [space.event(b) for b in blocks]))
    return found
