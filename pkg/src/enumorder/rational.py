"""Exact rational values: construction, comparison, arithmetic, and text form.

Values are ``fractions.Fraction`` instances: arbitrary-precision, always in
lowest terms with a positive denominator, so equality is structural and
comparison is exact cross-multiplication with no rounding anywhere.
"""

from __future__ import annotations

import re
from enum import Enum
from fractions import Fraction

Rational = Fraction


class ZeroDenominatorError(ZeroDivisionError):
    """A rational was constructed or parsed with denominator zero."""


class DivisionByZeroError(ZeroDivisionError):
    """Exact division by the zero rational."""


class RationalParseError(ValueError):
    """Text does not match the ``p/q`` form."""


class Ordering(Enum):
    LT = -1
    EQ = 0
    GT = 1


def make_rational(s: int, a: int, b: int) -> Rational:
    """Build ``(-1)**s * a/b`` in canonical lowest terms.

    ``a`` is a nonnegative numerator, ``b`` a positive denominator, ``s`` a
    parity flag selecting the sign.
    """
    if b == 0:
        raise ZeroDenominatorError("denominator must be nonzero")
    if a < 0 or b < 0:
        raise ValueError(f"numerator/denominator must be natural numbers, got a={a}, b={b}")
    value = Fraction(a, b)
    return -value if s % 2 else value


def compare(x: Rational, y: Rational) -> Ordering:
    """Total order consistent with the real-number order."""
    if x < y:
        return Ordering.LT
    if x > y:
        return Ordering.GT
    return Ordering.EQ


def add(x: Rational, y: Rational) -> Rational:
    return x + y


def sub(x: Rational, y: Rational) -> Rational:
    return x - y


def mul(x: Rational, y: Rational) -> Rational:
    return x * y


def div(x: Rational, y: Rational) -> Rational:
    if y == 0:
        raise DivisionByZeroError("division by the zero rational")
    return x / y


def pow_nonneg(x: Rational, exponent: int) -> Rational:
    """Raise to a nonnegative machine-integer power."""
    if exponent < 0:
        raise ValueError(f"exponent must be nonnegative, got {exponent}")
    return x**exponent


_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Rational:
    """Parse the textual form ``p/q`` (``q`` omitted when 1, optional minus)."""
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise RationalParseError(f"not a rational literal: {text!r}")
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    if q == 0:
        raise ZeroDenominatorError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Rational) -> str:
    """Inverse of :func:`parse_rational`; round-trips exactly."""
    return str(x)
