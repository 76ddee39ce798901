"""Deterministic construction of admissible-star sets of any size n >= 2.

The existence argument behind these sets is a limit argument: make the
leading cells small enough and the completed set always lands strictly inside
every bound.  Exact arithmetic turns each trial into a decidable check, so
the limits are replaced by concrete schedules:

* tiny leading cells get masses epsilon * 2^-i, with epsilon shrinking
  geometrically on retry;
* the anchor cell mass c_(n-1) walks a midpoint-refined dyadic grid of
  (0, 1 - max(a, b)), first feasible point wins;
* leading conditionals are strictly increasing co-monotone values below the
  target marginals; in realizable mode b_(n-1) is then solved exactly so the
  joint sum matches the target joint.

Two modes: ``literal`` produces a set meeting the star conditions alone;
``realizable`` additionally pins sum(c_i d_i) to the target joint, which is
what embedding the set over a concrete space requires.  Every output is
re-checked with the star checker before it is returned; nothing is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .admissibility import AdmissibleStarSet, check_admissible_star
from .errors import (
    DegenerateTail,
    InvalidTarget,
    NoFeasibleParameters,
    NotCorrelated,
    SingularSolve,
    SizeTooSmall,
    StrictCorrelationUnsupported,
)
from .spaces import CorrelationSummary

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_EPSILON = Fraction(1, 64)
DEFAULT_SHRINK = Fraction(1, 2)
DEFAULT_MAX_RETRIES = 64

_ANCHOR_VALUE_DEPTH = 12  # halvings of the anchor conditional a_(n-1)
_ANCHOR_MASS_DEPTH = 5  # dyadic refinement levels of the anchor mass grid


@dataclass(frozen=True)
class Schedule:
    """Retry schedule for the feasibility search."""

    epsilon: Fraction = DEFAULT_EPSILON
    shrink: Fraction = DEFAULT_SHRINK
    max_retries: int = DEFAULT_MAX_RETRIES

    def __post_init__(self) -> None:
        if not (0 < self.epsilon < 1):
            raise InvalidTarget("schedule epsilon must lie in (0, 1)")
        if not (0 < self.shrink < 1):
            raise InvalidTarget("schedule shrink factor must lie in (0, 1)")
        if self.max_retries < 0:
            raise InvalidTarget("schedule max retries must be nonnegative")


@dataclass(frozen=True)
class ConstructionRequest:
    target: CorrelationSummary
    n: int
    mode: str = "realizable"
    schedule: Schedule = Schedule()

    def __post_init__(self) -> None:
        if self.mode not in ("literal", "realizable"):
            raise InvalidTarget(f"unknown construction mode {self.mode!r}")


class TailCompletion(NamedTuple):
    """Last-cell values determined by the leading 3(n-1) parameters."""

    a_n: Fraction
    b_n: Fraction
    c_n: Fraction
    d_n: Fraction


def complete_tail(
    a_lead: Sequence[Fraction],
    b_lead: Sequence[Fraction],
    c_lead: Sequence[Fraction],
    target: CorrelationSummary,
) -> TailCompletion:
    """Fill in the last cell from the leading parameters.

    a_n and b_n restore the target marginals, c_n the unit mass, and d_n is
    computed by its closed form; d_n = a_n * b_n holds identically.
    """
    if not (len(a_lead) == len(b_lead) == len(c_lead)):
        raise InvalidTarget("leading parameter lists must have equal length")
    mass = sum(c_lead, ZERO)
    if mass >= 1:
        raise DegenerateTail(f"leading cell masses sum to {mass}, leaving no room for the tail")
    rest = ONE - mass
    a_gap = target.a - sum((c * a for c, a in zip(c_lead, a_lead)), ZERO)
    b_gap = target.b - sum((c * b for c, b in zip(c_lead, b_lead)), ZERO)
    return TailCompletion(
        a_n=a_gap / rest,
        b_n=b_gap / rest,
        c_n=rest,
        d_n=(a_gap * b_gap) / (rest * rest),
    )


def solve_joint_constraint(
    a_lead: Sequence[Fraction],
    b_fixed: Sequence[Fraction],
    c_lead: Sequence[Fraction],
    target: CorrelationSummary,
) -> Fraction:
    """Solve for b_(n-1) so the completed set's joint sum equals the target joint.

    With everything else fixed the joint sum is affine in b_(n-1) with
    coefficient c_(n-1) * (a_(n-1) - a_n); a zero coefficient has no unique
    solution.  The caller re-validates bounds and ordering on the result.
    """
    if len(b_fixed) != len(a_lead) - 1:
        raise InvalidTarget("expected one fewer fixed b value than leading a values")
    mass = sum(c_lead, ZERO)
    if mass >= 1:
        raise DegenerateTail(f"leading cell masses sum to {mass}, leaving no room for the tail")
    rest = ONE - mass
    a_n = (target.a - sum((c * a for c, a in zip(c_lead, a_lead)), ZERO)) / rest
    coeff = c_lead[-1] * (a_lead[-1] - a_n)
    if coeff == 0:
        raise SingularSolve("joint sum does not depend on b_(n-1); cannot solve")
    # joint(x) = sum_{k<n-1} c_k a_k b_k + c_(n-1) a_(n-1) x + a_n (b - sum_{k<n-1} c_k b_k - c_(n-1) x)
    fixed_joint = sum(
        (c * a * b for c, a, b in zip(c_lead, a_lead, b_fixed)), ZERO
    )
    b_partial = target.b - sum((c * b for c, b in zip(c_lead, b_fixed)), ZERO)
    joint_at_zero = fixed_joint + a_n * b_partial
    return (target.p_ab - joint_at_zero) / coeff


def _dyadic_midpoints(upper: Fraction, depth: int) -> Iterator[Fraction]:
    """Midpoint-refined dyadic grid of (0, upper): 1/2, 1/4, 3/4, 1/8, ..."""
    for level in range(1, depth + 1):
        step = Fraction(1, 2**level)
        for k in range(1, 2**level, 2):
            yield upper * k * step


def _assemble(
    a_lead: Sequence[Fraction],
    b_lead: Sequence[Fraction],
    c_lead: Sequence[Fraction],
    target: CorrelationSummary,
) -> AdmissibleStarSet:
    tail = complete_tail(a_lead, b_lead, c_lead, target)
    return AdmissibleStarSet(
        n=len(a_lead) + 1,
        a=(*a_lead, tail.a_n),
        b=(*b_lead, tail.b_n),
        c=(*c_lead, tail.c_n),
        d=(*(a * b for a, b in zip(a_lead, b_lead)), tail.d_n),
        target=target,
    )


def _accept(candidate: AdmissibleStarSet, need_joint: bool) -> bool:
    report = check_admissible_star(candidate)
    return report.verdict and (not need_joint or report.joint_matches_target)


def _try_literal(
    n: int, target: CorrelationSummary, anchor_mass: Fraction, epsilon: Fraction
) -> AdmissibleStarSet | None:
    c_lead = [epsilon * Fraction(1, 2**i) for i in range(1, n - 1)] + [anchor_mass]
    a_lead = [target.a * Fraction(i, n) for i in range(1, n)]
    b_lead = [target.b * Fraction(i, n) for i in range(1, n)]
    try:
        candidate = _assemble(a_lead, b_lead, c_lead, target)
    except (DegenerateTail, InvalidTarget):
        return None
    return candidate if _accept(candidate, need_joint=False) else None


def _try_realizable(
    n: int,
    target: CorrelationSummary,
    anchor_value: Fraction,
    anchor_mass: Fraction,
    epsilon: Fraction,
) -> AdmissibleStarSet | None:
    # Two-cell core first: cheap rejection of hopeless (value, mass) anchors.
    try:
        core_b = solve_joint_constraint([anchor_value], [], [anchor_mass], target)
        core = _assemble([anchor_value], [core_b], [anchor_mass], target)
    except (DegenerateTail, SingularSolve, InvalidTarget):
        return None
    if not _accept(core, need_joint=True):
        return None
    if n == 2:
        return core
    # Lift to n cells: tiny leading cells interpolate strictly below the anchor.
    c_lead = [epsilon * Fraction(1, 2**i) for i in range(1, n - 1)] + [anchor_mass]
    a_lead = [anchor_value * Fraction(i, n - 1) for i in range(1, n - 1)] + [anchor_value]
    b_tiny = [core_b * Fraction(i, n - 1) for i in range(1, n - 1)]
    try:
        b_last = solve_joint_constraint(a_lead, b_tiny, c_lead, target)
        candidate = _assemble(a_lead, [*b_tiny, b_last], c_lead, target)
    except (DegenerateTail, SingularSolve, InvalidTarget):
        return None
    return candidate if _accept(candidate, need_joint=True) else None


def construct_admissible_star(request: ConstructionRequest) -> AdmissibleStarSet:
    """Produce an admissible-star set for the request, or raise.

    Deterministic: identical requests yield identical sets.  The result is
    re-validated with the checker before being returned.
    """
    target, n = request.target, request.n
    if n < 2:
        raise SizeTooSmall(f"admissible-star sets need n >= 2, got {n}")
    if target.gamma <= 0:
        raise NotCorrelated(f"target pair is not positively correlated (gamma = {target.gamma})")
    realizable = request.mode == "realizable"
    if realizable and any(q == 0 for q in target.quadrants):
        raise StrictCorrelationUnsupported(
            "a strictly correlated target has a zero quadrant, but realizable sets "
            "force every quadrant positive (each sum of c_i a_i (1-b_i) style terms "
            "is strictly positive under the interior bounds)"
        )

    upper = ONE - max(target.a, target.b)
    epsilon = request.schedule.epsilon
    for _ in range(request.schedule.max_retries + 1):
        for anchor_mass in _dyadic_midpoints(upper, _ANCHOR_MASS_DEPTH):
            if realizable:
                for j in range(1, _ANCHOR_VALUE_DEPTH + 1):
                    anchor_value = target.a * Fraction(1, 2**j)
                    found = _try_realizable(n, target, anchor_value, anchor_mass, epsilon)
                    if found is not None:
                        return found
            else:
                found = _try_literal(n, target, anchor_mass, epsilon)
                if found is not None:
                    return found
        if n == 2:
            break  # no tiny cells, so shrinking epsilon cannot change anything
        epsilon *= request.schedule.shrink
    raise NoFeasibleParameters(
        f"no feasible parameters for n={n}, mode={request.mode} within the schedule"
    )
