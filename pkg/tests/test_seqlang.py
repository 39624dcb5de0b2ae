"""Sequence definition language: parsing, printing, evaluation, listings."""

import random
from fractions import Fraction

import pytest

from enumorder.listings import ListingExhausted, build_T
from enumorder.seqlang import (
    BinOp,
    Clause,
    EvalDivisionByZero,
    Lit,
    Neg,
    NonTotalPiecewiseError,
    Otherwise,
    ParityGuard,
    Piecewise,
    Pow,
    SeqSyntaxError,
    ThresholdGuard,
    Var,
    evaluate,
    parse,
    to_listing,
    to_text,
)

FAMILY_TEXT = "case i odd: (i-1) + (n-1)/n ; case i even: i - (n-1)/n"


def F(*args):
    return Fraction(*args)


# --- parsing -------------------------------------------------------------------


def test_parse_division_binds_tighter_than_addition():
    expr = parse("(i-1) + (n-1)/n")
    assert expr == BinOp(
        "+",
        BinOp("-", Var("i"), Lit(1)),
        BinOp("/", BinOp("-", Var("n"), Lit(1)), Var("n")),
    )


def test_parse_family_definition():
    expr = parse(FAMILY_TEXT)
    assert isinstance(expr, Piecewise)
    assert len(expr.clauses) == 2
    assert expr.clauses[0].guard == ParityGuard("odd")
    assert expr.clauses[1].guard == ParityGuard("even")


def test_parse_error_carries_offset_and_expected():
    with pytest.raises(SeqSyntaxError) as failure:
        parse("1/(n")
    assert failure.value.offset == 4
    assert ")" in failure.value.expected


def test_parse_error_on_unknown_character():
    with pytest.raises(SeqSyntaxError) as failure:
        parse("1 @ 2")
    assert failure.value.offset == 2


def test_parse_precedence_table():
    assert parse("2+3*4") == BinOp("+", Lit(2), BinOp("*", Lit(3), Lit(4)))
    assert parse("2*3^2") == BinOp("*", Lit(2), Pow(Lit(3), 2))
    assert parse("-2^2") == Neg(Pow(Lit(2), 2))
    assert parse("1-2-3") == BinOp("-", BinOp("-", Lit(1), Lit(2)), Lit(3))
    assert parse("2 * -3") == BinOp("*", Lit(2), Neg(Lit(3)))


def test_parse_whitespace_and_comments():
    text = "# family\n  (i-1)\t+ (n-1)/n  # tail comment\n"
    assert parse(text) == parse("(i-1) + (n-1)/n")


def test_parse_threshold_guard_dispatch():
    expr = parse("case n < 3: n ; case otherwise: 0")
    assert isinstance(expr, Piecewise)
    assert expr.clauses[0].guard == ThresholdGuard("<", 3)
    assert evaluate(expr, 0, 2) == F(2)
    assert evaluate(expr, 0, 3) == F(0)


def test_parse_unguarded_tail_acts_as_fallback():
    expr = parse("case n >= 5: 1 ; n")
    assert evaluate(expr, 0, 7) == F(1)
    assert evaluate(expr, 0, 2) == F(2)


def test_non_total_piecewise_rejected():
    with pytest.raises(NonTotalPiecewiseError):
        parse("case i odd: n")
    with pytest.raises(NonTotalPiecewiseError):
        parse("case n < 5: 1 ; case n >= 5: 2")
    with pytest.raises(NonTotalPiecewiseError):
        parse("case otherwise: 1 ; case i odd: n")


def test_parity_pair_is_total():
    parse("case i odd: 1 ; case i even: 2")


def test_single_expression_is_not_piecewise():
    assert parse("n/3") == BinOp("/", Var("n"), Lit(3))


# --- evaluation ------------------------------------------------------------------


def test_family_evaluation_examples():
    expr = parse(FAMILY_TEXT)
    assert evaluate(expr, 1, 2) == F(1, 2)
    assert evaluate(expr, 2, 1) == F(2)


def test_division_by_zero_carries_location():
    expr = parse("1/(n-1)")
    with pytest.raises(EvalDivisionByZero) as failure:
        evaluate(expr, 4, 1)
    assert (failure.value.i, failure.value.n) == (4, 1)


def test_evaluate_requires_positive_n():
    with pytest.raises(ValueError):
        evaluate(parse("n"), 0, 0)


def test_evaluate_is_pure():
    expr = parse(FAMILY_TEXT)
    assert evaluate(expr, 3, 17) == evaluate(expr, 3, 17)


def test_power_evaluation():
    assert evaluate(parse("(n+1)^3"), 0, 1) == F(8)
    assert evaluate(parse("2^0"), 0, 1) == F(1)


def test_family_matches_builtin_blocks():
    expr = parse(FAMILY_TEXT)
    for i in range(1, 7):
        built = build_T(i).listing().prefix(100)
        evaluated = [evaluate(expr, i, n) for n in range(1, 101)]
        assert built == evaluated


# --- listings ---------------------------------------------------------------------


def test_to_listing_matches_block_family():
    expr = parse(FAMILY_TEXT)
    assert to_listing(expr, 1).prefix(100) == build_T(1).listing().prefix(100)


def test_to_listing_thirds_shape():
    assert to_listing(parse("n/3"), 0).prefix(3) == [F(1, 3), F(2, 3), F(1)]


def test_constant_expression_dedups_to_singleton():
    ls = to_listing(parse("1"), 0)
    assert ls.try_prefix(4) == [F(1)]
    with pytest.raises(ListingExhausted):
        ls.value_at(1)


def test_to_listing_propagates_evaluation_errors():
    ls = to_listing(parse("1/(n-1)"), 0)
    with pytest.raises(EvalDivisionByZero):
        ls.value_at(0)


# --- printing ---------------------------------------------------------------------


def test_round_trip_family_definition():
    expr = parse(FAMILY_TEXT)
    assert parse(to_text(expr)) == expr


def test_round_trip_preserves_grouping():
    exprs = [
        BinOp("+", Lit(1), BinOp("+", Lit(2), Lit(3))),
        BinOp("-", BinOp("-", Lit(1), Lit(2)), Lit(3)),
        Neg(BinOp("+", Var("n"), Lit(1))),
        Pow(Neg(Lit(2)), 3),
        BinOp("*", Neg(Var("i")), Pow(Var("n"), 2)),
        Neg(Neg(Lit(3))),
    ]
    for expr in exprs:
        assert parse(to_text(expr)) == expr


def _random_expr(rng: random.Random, depth: int):
    choices = ["lit", "var"]
    if depth > 0:
        choices += ["bin", "bin", "neg", "pow"]
    kind = rng.choice(choices)
    if kind == "lit":
        return Lit(rng.randrange(0, 20))
    if kind == "var":
        return Var(rng.choice(["n", "i"]))
    if kind == "neg":
        return Neg(_random_expr(rng, depth - 1))
    if kind == "pow":
        return Pow(_random_expr(rng, depth - 1), rng.randrange(0, 4))
    op = rng.choice(["+", "-", "*", "/"])
    return BinOp(op, _random_expr(rng, depth - 1), _random_expr(rng, depth - 1))


def _random_sequence_expr(rng: random.Random):
    if rng.random() < 0.5:
        return _random_expr(rng, 4)
    clauses = []
    for _ in range(rng.randrange(1, 4)):
        guard = rng.choice(
            [
                ParityGuard("odd"),
                ParityGuard("even"),
                ThresholdGuard("<", rng.randrange(1, 9)),
                ThresholdGuard(">=", rng.randrange(1, 9)),
            ]
        )
        clauses.append(Clause(guard, _random_expr(rng, 3)))
    clauses.append(Clause(rng.choice([None, Otherwise()]), _random_expr(rng, 3)))
    return Piecewise(tuple(clauses))


def test_round_trip_randomized_asts():
    rng = random.Random(1207)
    for _ in range(100):
        expr = _random_sequence_expr(rng)
        assert parse(to_text(expr)) == expr
