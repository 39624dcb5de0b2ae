"""Shared deterministic pools of set specs for randomized tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import count

from enumorder.listings import (
    SetSpec,
    add_finite,
    build_A,
    build_T,
    builtin_dyadic,
    builtin_harmonic,
    builtin_thirds,
    finite_listing,
    interleave,
    rationals_in_interval,
    remove_finite,
    shift_spec,
)
from enumorder.seqlang import evaluate, parse

_FAMILY_TEXT = "case i odd: (i-1) + (n-1)/n ; case i even: i - (n-1)/n"


def _seq_spec(i: int) -> SetSpec:
    expr = parse(_FAMILY_TEXT)

    def stream():
        return (evaluate(expr, i, n) for n in count(1))

    return SetSpec(f"seqfam:i={i}", stream)


def spec_factories():
    """Fresh-spec factories covering builtins and every transform."""
    return [
        builtin_harmonic,
        builtin_thirds,
        lambda: build_T(1),
        lambda: build_T(2),
        lambda: build_T(3),
        lambda: build_T(4),
        lambda: build_A(1),
        lambda: build_A(2),
        lambda: build_A(3),
        lambda: rationals_in_interval(Fraction(0), Fraction(1)),
        lambda: rationals_in_interval(Fraction(-1), Fraction(1)),
        lambda: finite_listing([Fraction(3), Fraction(1, 2), Fraction(5)]),
        lambda: finite_listing(
            [Fraction(-2), Fraction(0), Fraction(7, 3), Fraction(9), Fraction(-11, 4)]
        ),
        lambda: builtin_dyadic(
            finite_listing([Fraction(k) for k in (3, 0, 5, 1, 8, 2, 7, 4, 6, 9)]).listing()
        ),
        lambda: remove_finite(builtin_harmonic(), [Fraction(1)]),
        lambda: add_finite(builtin_thirds(), [Fraction(-5)]),
        lambda: shift_spec(builtin_harmonic(), 3),
        lambda: interleave([build_T(1), build_T(3)]),
        lambda: interleave([builtin_harmonic(), builtin_thirds()]),
        lambda: _seq_spec(2),
        lambda: _seq_spec(5),
    ]


def random_spec(rng: random.Random) -> SetSpec:
    return rng.choice(spec_factories())()


def pattern_by_counting(values):
    """Independent order-pattern oracle: entry k counts smaller values."""
    return [sum(other < v for other in values) for v in values]
