"""Rational numbers: text form and small helpers around ``fractions.Fraction``."""

from fractions import Fraction
import math
import re

Rational = Fraction

_RAT_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def sign(q):
    return (q > 0) - (q < 0)


def floor(q):
    return Fraction(math.floor(q))


def ceil(q):
    return Fraction(math.ceil(q))
