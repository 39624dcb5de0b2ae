"""Parser and evaluator for the closed-form sequence definition language.

A definition describes one exact rational per variable pair ``(i, n)``:
``i`` selects a family member, ``n`` is the 1-based position in the
sequence. Grammar (whitespace-insensitive, ``#`` starts a line comment)::

    file     := defn (";" defn)*
    defn     := "case" guard ":" expr | expr
    guard    := "i" ("odd" | "even") | "n" ("<" | ">=") int | "otherwise"
    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := ("-")? atom ("^" int)?
    atom     := int | "n" | "i" | "(" expr ")"
    int      := [0-9]+

Power binds tighter than unary minus, which binds tighter than ``*``/``/``,
then ``+``/``-``; equal-precedence binary operators associate left.
Exponents are literal nonnegative integers; rationals arise by division.

A file with several clauses (or any guard) is piecewise: the first clause
whose guard accepts ``(i, n)`` is evaluated. The clause list must be total:
it either ends with an unguarded or ``otherwise`` clause, or contains both
``i odd`` and ``i even`` guards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Iterator

from .listings import Listing


class SeqSyntaxError(ValueError):
    """Parse failure, with the byte offset and the expected-token set."""

    def __init__(self, offset: int, expected: tuple[str, ...], found: str):
        expected_text = " or ".join(expected)
        super().__init__(f"offset {offset}: expected {expected_text}, found {found}")
        self.offset = offset
        self.expected = expected
        self.found = found


class NonTotalPiecewiseError(ValueError):
    """The piecewise clause list does not cover all (i, n)."""


class EvalDivisionByZero(ZeroDivisionError):
    """Division by zero during evaluation, recorded with its (i, n)."""

    def __init__(self, i: int, n: int):
        super().__init__(f"division by zero at (i={i}, n={n})")
        self.i = i
        self.n = n


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str  # "n" or "i"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*", "/"
    left: "Expr"
    right: "Expr"


Expr = Lit | Var | Neg | Pow | BinOp


@dataclass(frozen=True)
class ParityGuard:
    parity: str  # "odd" | "even"


@dataclass(frozen=True)
class ThresholdGuard:
    op: str  # "<" | ">="
    bound: int


@dataclass(frozen=True)
class Otherwise:
    pass


Guard = ParityGuard | ThresholdGuard | Otherwise


@dataclass(frozen=True)
class Clause:
    guard: Guard | None
    body: Expr


@dataclass(frozen=True)
class Piecewise:
    clauses: tuple[Clause, ...]


SequenceExpr = Expr | Piecewise


# --- Tokenizer ---------------------------------------------------------------

_SYMBOLS = ("+", "-", "*", "/", "^", "(", ")", ":", ";", "<", ">=")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | one of _SYMBOLS | "end"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    size = len(text)
    while pos < size:
        ch = text[pos]
        if ch in " \t\r\n":
            pos += 1
            continue
        if ch == "#":
            while pos < size and text[pos] != "\n":
                pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < size and text[pos].isdigit():
                pos += 1
            tokens.append(_Token("int", text[start:pos], start))
            continue
        if ch.isalpha():
            start = pos
            while pos < size and text[pos].isalpha():
                pos += 1
            tokens.append(_Token("name", text[start:pos], start))
            continue
        if ch == ">":
            if text[pos : pos + 2] == ">=":
                tokens.append(_Token(">=", ">=", pos))
                pos += 2
                continue
            raise SeqSyntaxError(pos, (">=",), repr(ch))
        if ch in "+-*/^():;<":
            tokens.append(_Token(ch, ch, pos))
            pos += 1
            continue
        raise SeqSyntaxError(pos, ("digit", "name", "operator"), repr(ch))
    tokens.append(_Token("end", "", size))
    return tokens


# --- Parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def fail(self, expected: tuple[str, ...]) -> SeqSyntaxError:
        token = self.peek()
        found = "end of input" if token.kind == "end" else repr(token.text)
        return SeqSyntaxError(token.offset, expected, found)

    def expect(self, kind: str) -> _Token:
        if self.peek().kind != kind:
            raise self.fail((kind,))
        return self.advance()

    def parse_file(self) -> SequenceExpr:
        clauses = [self.parse_defn()]
        while self.peek().kind == ";":
            self.advance()
            clauses.append(self.parse_defn())
        if self.peek().kind != "end":
            raise self.fail((";",))
        if len(clauses) == 1 and clauses[0].guard is None:
            return clauses[0].body
        _check_total(clauses)
        return Piecewise(tuple(clauses))

    def parse_defn(self) -> Clause:
        token = self.peek()
        if token.kind == "name" and token.text == "case":
            self.advance()
            guard = self.parse_guard()
            self.expect(":")
            return Clause(guard, self.parse_expr())
        return Clause(None, self.parse_expr())

    def parse_guard(self) -> Guard:
        token = self.peek()
        if token.kind != "name":
            raise self.fail(("i", "n", "otherwise"))
        if token.text == "otherwise":
            self.advance()
            return Otherwise()
        if token.text == "i":
            self.advance()
            parity = self.peek()
            if parity.kind == "name" and parity.text in ("odd", "even"):
                self.advance()
                return ParityGuard(parity.text)
            raise self.fail(("odd", "even"))
        if token.text == "n":
            self.advance()
            op = self.peek()
            if op.kind in ("<", ">="):
                self.advance()
                bound = self.expect("int")
                return ThresholdGuard(op.kind, int(bound.text))
            raise self.fail(("<", ">="))
        raise self.fail(("i", "n", "otherwise"))

    def parse_expr(self) -> Expr:
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self) -> Expr:
        node = self.parse_factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            node = BinOp(op, node, self.parse_factor())
        return node

    def parse_factor(self) -> Expr:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        node = self.parse_atom()
        if self.peek().kind == "^":
            self.advance()
            exponent = self.expect("int")
            node = Pow(node, int(exponent.text))
        if negate:
            node = Neg(node)
        return node

    def parse_atom(self) -> Expr:
        token = self.peek()
        if token.kind == "int":
            self.advance()
            return Lit(int(token.text))
        if token.kind == "name" and token.text in ("n", "i"):
            self.advance()
            return Var(token.text)
        if token.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise self.fail(("int", "n", "i", "("))


def _check_total(clauses: list[Clause]) -> None:
    last = clauses[-1].guard
    if last is None or isinstance(last, Otherwise):
        return
    parities = {c.guard.parity for c in clauses if isinstance(c.guard, ParityGuard)}
    if parities == {"odd", "even"}:
        return
    raise NonTotalPiecewiseError(
        "piecewise definition must end with a fallback clause or contain both parity guards"
    )


def parse(text: str) -> SequenceExpr:
    """Parse a definition (the contents of a ``.seq`` file)."""
    return _Parser(_tokenize(text)).parse_file()


# --- Printer -----------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(expr: SequenceExpr) -> str:
    """Render to source text; reparsing yields a structurally identical AST."""
    if isinstance(expr, Piecewise):
        return " ; ".join(_clause_text(c) for c in expr.clauses)
    return _expr_text(expr)


def _clause_text(clause: Clause) -> str:
    if clause.guard is None:
        return _expr_text(clause.body)
    guard = clause.guard
    if isinstance(guard, Otherwise):
        head = "case otherwise"
    elif isinstance(guard, ParityGuard):
        head = f"case i {guard.parity}"
    else:
        head = f"case n {guard.op} {guard.bound}"
    return f"{head}: {_expr_text(clause.body)}"


def _expr_text(e: Expr) -> str:
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        return f"{_atom_text(e.base)}^{e.exponent}"
    if isinstance(e, Neg):
        child = e.operand
        if isinstance(child, (Lit, Var, Pow)):
            return f"-{_expr_text(child)}"
        return f"-({_expr_text(child)})"
    level = _PRECEDENCE[e.op]
    left = _expr_text(e.left)
    if isinstance(e.left, BinOp) and _PRECEDENCE[e.left.op] < level:
        left = f"({left})"
    right = _expr_text(e.right)
    # Left associativity: an equal-precedence right child needs parentheses.
    if isinstance(e.right, BinOp) and _PRECEDENCE[e.right.op] <= level:
        right = f"({right})"
    return f"{left} {e.op} {right}"


def _atom_text(e: Expr) -> str:
    if isinstance(e, (Lit, Var)):
        return _expr_text(e)
    return f"({_expr_text(e)})"


# --- Evaluator ---------------------------------------------------------------


def evaluate(expr: SequenceExpr, i: int, n: int) -> Fraction:
    """Exact value at ``(i, n)``; the first matching guard selects the case."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    body = _select(expr, i, n)
    return _eval(body, i, n)


def _select(expr: SequenceExpr, i: int, n: int) -> Expr:
    if not isinstance(expr, Piecewise):
        return expr
    for clause in expr.clauses:
        if _guard_accepts(clause.guard, i, n):
            return clause.body
    raise RuntimeError("piecewise dispatch fell through a total clause list")


def _guard_accepts(guard: Guard | None, i: int, n: int) -> bool:
    if guard is None or isinstance(guard, Otherwise):
        return True
    if isinstance(guard, ParityGuard):
        return (i % 2 == 1) == (guard.parity == "odd")
    if guard.op == "<":
        return n < guard.bound
    return n >= guard.bound


def _eval(e: Expr, i: int, n: int) -> Fraction:
    if isinstance(e, Lit):
        return Fraction(e.value)
    if isinstance(e, Var):
        return Fraction(n if e.name == "n" else i)
    if isinstance(e, Neg):
        return -_eval(e.operand, i, n)
    if isinstance(e, Pow):
        return _eval(e.base, i, n) ** e.exponent
    left = _eval(e.left, i, n)
    right = _eval(e.right, i, n)
    if e.op == "+":
        return left + right
    if e.op == "-":
        return left - right
    if e.op == "*":
        return left * right
    if right == 0:
        raise EvalDivisionByZero(i, n)
    return left / right


def to_listing(expr: SequenceExpr, i: int) -> Listing:
    """Listing whose index ``k`` evaluates the definition at ``n = k + 1``.

    Repeated values are skipped by the listing layer, so a definition that
    revisits values (or is constant) yields a finite injective listing.
    """

    def stream() -> Iterator[Fraction]:
        for n in count(1):
            yield evaluate(expr, i, n)

    return Listing(stream())
