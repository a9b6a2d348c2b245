"""Exact rational plumbing.

`fractions.Fraction` is the rational carrier everywhere: it is always reduced,
keeps a positive denominator, and never rounds.  This module only adds the
wire format ("p/q" strings) and the display-only bits rendering.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_ratio(text: str) -> Fraction:
    """Parse a "p/q" (or bare "p") decimal string into a Fraction."""
    if not isinstance(text, str):
        raise DomainError("bad_rational", f"expected a rational string, got {text!r}")
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise DomainError("bad_rational", f"cannot parse rational {text!r}")
    num = int(match.group(1))
    den_text = match.group(2)
    den = int(den_text) if den_text is not None else 1
    if den == 0:
        raise DomainError("bad_rational", f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_ratio(value: Fraction) -> str:
    """Render a Fraction as "p/q", always including the denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def bits_display(value: Fraction) -> float:
    """Display-only base-2 logarithm, rounded to 12 decimal places.

    Exactness lives in the rational argument; this float is for report
    readability only and is never used in comparisons.
    """
    value = Fraction(value)
    if value <= 0:
        raise DomainError("bad_log_argument", f"log2 argument must be positive, got {value}")
    return round(math.log2(value.numerator) - math.log2(value.denominator), 12)
