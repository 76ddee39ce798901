"""Exact rationals on the wire: ``"p/q"`` strings in lowest terms.

Internally everything is a :class:`fractions.Fraction`; these helpers only
handle the string form used by the JSON interfaces.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SpaceFormatError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer string) into a Fraction.

    Rejects zero denominators and anything that is not a ratio of integers;
    non-lowest-terms input is accepted and normalised.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise SpaceFormatError(f"expected a rational string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise SpaceFormatError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise SpaceFormatError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as an explicit ``p/q`` string in lowest terms."""
    return f"{value.numerator}/{value.denominator}"


def approx(value: Fraction) -> float:
    """Float approximation for display next to the exact value."""
    return float(value)
