"""Deterministic injective streams of rationals and the built-in families.

A listing is a replay-deterministic stream with a memoized prefix: asking for
index ``k`` twice yields the identical value, and all produced values are
pairwise distinct (duplicates from the raw generator are skipped, first
occurrence wins). A :class:`SetSpec` packages a pure stream factory — the
set's natural enumeration order — together with an optional order-type
descriptor and an optional gap oracle deciding whether the set meets a given
open interval.

A ``Listing`` owns mutable iterator state and is single-owner: hand it off
between threads, but do not mutate it from two at once. Fresh independent
replays come from ``SetSpec.listing()``, whose construction is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import Callable, Iterator, Optional, Sequence

from .ordertype import (
    OMEGA,
    OMEGA_STAR,
    Concat,
    Dense,
    Descriptor,
    Fin,
    Omega,
    OmegaStar,
    normalize,
)

# A gap oracle answers: does the set meet the open interval (lo, hi)?
# None stands for an unbounded end.
GapOracle = Callable[[Optional[Fraction], Optional[Fraction]], bool]

# A raw generator that repeats forever is cut off after this many consecutive
# duplicates, so eventually-constant generators yield finite listings instead
# of hanging.
DEDUP_RUN_LIMIT = 10_000


class ListingExhausted(Exception):
    """An index beyond the end of a finite listing was requested."""

    def __init__(self, length: int):
        super().__init__(f"listing ended after {length} values")
        self.length = length


class NonNaturalIndexError(ValueError):
    """An index stream produced a value that is not a nonnegative integer."""


class DuplicateValuesError(ValueError):
    """A value list that must be duplicate-free contains repeats."""


class Listing:
    """Replay-deterministic injective stream with a memoized prefix."""

    def __init__(self, stream: Iterator[Fraction]):
        self._stream = stream
        self._memo: list[Fraction] = []
        self._seen: set[Fraction] = set()
        self._done = False

    def value_at(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError(f"listing index must be nonnegative, got {k}")
        self._fill(k + 1)
        if k >= len(self._memo):
            raise ListingExhausted(len(self._memo))
        return self._memo[k]

    def prefix(self, n: int) -> list[Fraction]:
        """First ``n`` values; raises :class:`ListingExhausted` on shortfall."""
        self._fill(n)
        if len(self._memo) < n:
            raise ListingExhausted(len(self._memo))
        return list(self._memo[:n])

    def try_prefix(self, n: int) -> list[Fraction]:
        """Up to ``n`` values, shorter if the stream ends first."""
        self._fill(n)
        return list(self._memo[: min(n, len(self._memo))])

    def is_exhausted(self) -> bool:
        """True once the underlying stream is known to have ended."""
        return self._done

    def _fill(self, n: int) -> None:
        run = 0
        while not self._done and len(self._memo) < n:
            try:
                value = next(self._stream)
            except StopIteration:
                self._done = True
                break
            if value in self._seen:
                run += 1
                if run >= DEDUP_RUN_LIMIT:
                    self._done = True
                continue
            run = 0
            self._seen.add(value)
            self._memo.append(value)


@dataclass
class SetSpec:
    """A computably enumerable set of rationals, presented by a generator.

    ``make_stream`` is a pure factory: every call starts an independent
    replay of the same deterministic enumeration, whose deduplicated order is
    the set's natural listing.
    """

    name: str
    make_stream: Callable[[], Iterator[Fraction]]
    descriptor: Descriptor | None = None
    gap_oracle: GapOracle | None = None

    def listing(self) -> Listing:
        return Listing(self.make_stream())


def shift(h: Listing, m: int) -> Listing:
    """Listing whose index ``i`` reads index ``i + m`` of the input."""
    if m < 0:
        raise ValueError(f"shift must be nonnegative, got {m}")

    def stream() -> Iterator[Fraction]:
        k = m
        while True:
            try:
                yield h.value_at(k)
            except ListingExhausted:
                return
            k += 1

    return Listing(stream())


# ---------------------------------------------------------------------------
# Gap-oracle helpers
# ---------------------------------------------------------------------------


def _meets_reciprocals(lo: Fraction | None, hi: Fraction | None) -> bool:
    """Does some 1/n with n >= 1 lie strictly inside (lo, hi)?"""
    if hi is not None and hi <= 0:
        return False
    if hi is None or hi > 1:
        n = 1
    else:
        n = math.floor(1 / hi) + 1
    candidate = Fraction(1, n)
    return lo is None or candidate > lo


def _reciprocal_oracle(center: Fraction, sign: int) -> GapOracle:
    """Oracle for the set {center + sign/n : n >= 1}."""

    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        if sign > 0:
            new_lo = None if lo is None else lo - center
            new_hi = None if hi is None else hi - center
        else:
            new_lo = None if hi is None else center - hi
            new_hi = None if lo is None else center - lo
        return _meets_reciprocals(new_lo, new_hi)

    return oracle


def _finite_oracle(values: Sequence[Fraction]) -> GapOracle:
    vals = list(values)

    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        return any(
            (lo is None or v > lo) and (hi is None or v < hi) for v in vals
        )

    return oracle


def _union_oracle(oracles: Sequence[GapOracle]) -> GapOracle:
    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        return any(o(lo, hi) for o in oracles)

    return oracle


def _minus_finite_oracle(base: GapOracle, removed: Sequence[Fraction]) -> GapOracle:
    """Oracle for the base set with finitely many points deleted.

    Splitting the queried interval at the deleted points reduces the question
    to base-oracle queries on open subintervals, which exclude the points
    themselves.
    """
    points = sorted(set(removed))

    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        inside = [
            p for p in points if (lo is None or p > lo) and (hi is None or p < hi)
        ]
        bounds: list[Fraction | None] = [lo, *inside, hi]
        return any(base(bounds[t], bounds[t + 1]) for t in range(len(bounds) - 1))

    return oracle


# ---------------------------------------------------------------------------
# Built-in families
# ---------------------------------------------------------------------------


def builtin_harmonic() -> SetSpec:
    """Reciprocals of the positive integers, listed 1, 1/2, 1/3, ..."""

    def stream() -> Iterator[Fraction]:
        for n in count(1):
            yield Fraction(1, n)

    return SetSpec("harmonic", stream, OMEGA_STAR, _reciprocal_oracle(Fraction(0), +1))


def builtin_thirds() -> SetSpec:
    """Nonnegative multiples of 1/3, listed 0, 1/3, 2/3, ..."""

    def stream() -> Iterator[Fraction]:
        for k in count(0):
            yield Fraction(k, 3)

    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        k = 0 if lo is None else max(0, math.floor(3 * lo) + 1)
        return hi is None or Fraction(k, 3) < hi

    return SetSpec("thirds", stream, OMEGA, oracle)


def builtin_dyadic(index_listing: Listing) -> SetSpec:
    """Powers 2**(-m) for each m drawn from an index listing of naturals."""

    def stream() -> Iterator[Fraction]:
        k = 0
        while True:
            try:
                v = index_listing.value_at(k)
            except ListingExhausted:
                return
            if v.denominator != 1 or v < 0:
                raise NonNaturalIndexError(
                    f"index listing produced {v} at position {k}; expected a natural number"
                )
            yield Fraction(1, 2 ** int(v))
            k += 1

    return SetSpec("dyadic", stream)


def build_T(i: int) -> SetSpec:
    """Block family member ``i``: values (i-1) + (n-1)/n over n = 1, 2, ...
    when ``i`` is odd (ascending, inside [i-1, i)), and i - (n-1)/n when
    ``i`` is even (descending, inside (i-1, i]).
    """
    if i < 1:
        raise ValueError(f"family index must be >= 1, got {i}")
    if i % 2:

        def stream() -> Iterator[Fraction]:
            for n in count(1):
                yield (i - 1) + Fraction(n - 1, n)

        # {(i-1) + (n-1)/n} == {i - 1/n}
        return SetSpec(f"T:{i}", stream, OMEGA, _reciprocal_oracle(Fraction(i), -1))

    def stream() -> Iterator[Fraction]:
        for n in count(1):
            yield i - Fraction(n - 1, n)

    # {i - (n-1)/n} == {(i-1) + 1/n}
    return SetSpec(f"T:{i}", stream, OMEGA_STAR, _reciprocal_oracle(Fraction(i - 1), +1))


def interleave(specs: Sequence[SetSpec]) -> SetSpec:
    """Round-robin union of the inputs' listings, first occurrence winning.

    Exhausted inputs drop out of the rotation; duplicate values across inputs
    are skipped by the listing layer, so the result stays injective even when
    ranges overlap.
    """
    if not specs:
        raise ValueError("interleave needs at least one input")
    specs = list(specs)

    def stream() -> Iterator[Fraction]:
        listings = [s.listing() for s in specs]
        positions = [0] * len(listings)
        alive = [True] * len(listings)
        while any(alive):
            for t, ls in enumerate(listings):
                if not alive[t]:
                    continue
                try:
                    value = ls.value_at(positions[t])
                except ListingExhausted:
                    alive[t] = False
                    continue
                positions[t] += 1
                yield value

    oracles = [s.gap_oracle for s in specs]
    oracle = _union_oracle(oracles) if all(o is not None for o in oracles) else None
    name = "interleave(" + ",".join(s.name for s in specs) + ")"
    return SetSpec(name, stream, None, oracle)


def build_A(i: int) -> SetSpec:
    """Union of the first ``i`` block families under strict round-robin.

    The natural listing rotates T:1, T:2, ..., T:i, T:1, ... so every block
    appears with density 1/i. Consecutive even/odd blocks share their integer
    boundary value; the shared value is listed once.
    """
    if i < 1:
        raise ValueError(f"family index must be >= 1, got {i}")
    blocks = [build_T(s) for s in range(1, i + 1)]
    base = interleave(blocks)
    descriptor = normalize(Concat(tuple(b.descriptor for b in blocks)))
    return SetSpec(f"A:{i}", base.make_stream, descriptor, base.gap_oracle)


# ---------------------------------------------------------------------------
# Canonical enumeration of the rationals
# ---------------------------------------------------------------------------

# Height of a reduced nonzero fraction p/q is max(|p|, q). Zero is emitted at
# the head of this height's block rather than first: interval listings must
# approach their endpoint infima only after a long prefix, because the
# first-fit matcher consumes listed values in order (see coorder.match_listing).
ZERO_HEIGHT = 128


def _height_block(h: int) -> list[Fraction]:
    """Positive rationals of height ``h``, by denominator then numerator."""
    out = []
    for q in range(1, h + 1):
        if q < h:
            if math.gcd(h, q) == 1:
                out.append(Fraction(h, q))
        else:
            out.extend(Fraction(p, h) for p in range(1, h + 1) if math.gcd(p, h) == 1)
    return out


def rationals() -> Iterator[Fraction]:
    """Every rational exactly once, by increasing height.

    Within a height block: positives, then their negations. A complete,
    injective, deterministic enumeration; the height of a value bounds the
    number of steps before it appears.
    """
    for h in count(1):
        if h == ZERO_HEIGHT:
            yield Fraction(0)
        block = _height_block(h)
        yield from block
        yield from (-v for v in block)


def rationals_in_interval(a: Fraction, b: Fraction) -> SetSpec:
    """All rationals in the closed interval [a, b], in canonical order."""
    if a > b:
        raise ValueError(f"interval bounds out of order: {a} > {b}")
    name = f"interval:{a},{b}"
    if a == b:
        single = finite_listing([a])
        return SetSpec(name, single.make_stream, Fin(1), single.gap_oracle)

    def stream() -> Iterator[Fraction]:
        return (v for v in rationals() if a <= v <= b)

    def oracle(lo: Fraction | None, hi: Fraction | None) -> bool:
        if lo is not None and hi is not None and lo >= hi:
            return False
        if (lo is None or lo < a) and (hi is None or hi > a):
            return True
        if (lo is None or lo < b) and (hi is None or hi > b):
            return True
        effective_lo = a if lo is None else max(lo, a)
        effective_hi = b if hi is None else min(hi, b)
        return effective_lo < effective_hi

    return SetSpec(name, stream, Dense(True, True), oracle)


# ---------------------------------------------------------------------------
# Finite listings and finite edits
# ---------------------------------------------------------------------------


def finite_listing(values: Sequence[Fraction]) -> SetSpec:
    """Exactly the given values, in the given order, then the stream ends."""
    vals = list(values)
    if len(set(vals)) != len(vals):
        raise DuplicateValuesError("finite listing values must be pairwise distinct")

    def stream() -> Iterator[Fraction]:
        yield from vals

    name = "finite:" + ",".join(str(v) for v in vals)
    return SetSpec(name, stream, Fin(len(vals)), _finite_oracle(vals))


def _all_infinite_blocks(d: Descriptor | None) -> bool:
    if isinstance(d, (Omega, OmegaStar)):
        return True
    if isinstance(d, Concat):
        return all(isinstance(b, (Omega, OmegaStar)) for b in d.blocks)
    return False


# How far into a listing the finite-edit preconditions look. Membership is
# only semi-decidable, so checks beyond this prefix are not attempted.
EDIT_SCAN_PREFIX = 512


def remove_finite(spec: SetSpec, values: Sequence[Fraction]) -> SetSpec:
    """The set minus finitely many values; the stream filters them out."""
    removed = frozenset(values)
    if not removed:
        return spec

    def stream() -> Iterator[Fraction]:
        return (v for v in spec.make_stream() if v not in removed)

    if _all_infinite_blocks(spec.descriptor):
        # Deleting finitely many points leaves every infinite block infinite.
        descriptor = spec.descriptor
    elif isinstance(spec.descriptor, Fin):
        hits = sum(1 for v in spec.listing().try_prefix(spec.descriptor.size) if v in removed)
        descriptor = Fin(spec.descriptor.size - hits)
    else:
        descriptor = None

    oracle = (
        _minus_finite_oracle(spec.gap_oracle, sorted(removed))
        if spec.gap_oracle is not None
        else None
    )
    name = f"{spec.name}+drop=" + ";".join(str(v) for v in sorted(removed))
    return SetSpec(name, stream, descriptor, oracle)


def add_finite(spec: SetSpec, values: Sequence[Fraction]) -> SetSpec:
    """The set plus finitely many new values, prepended in ascending order.

    Disjointness is checked against the first ``EDIT_SCAN_PREFIX`` produced
    values (and rejects duplicates within ``values`` itself); membership
    deeper in the stream is not decidable here, so a clash beyond the scanned
    prefix would surface only as a skipped duplicate in the listing.
    """
    added = sorted(set(values))
    if len(added) != len(list(values)):
        raise DuplicateValuesError("added values must be pairwise distinct")
    if not added:
        return spec
    scanned = spec.listing().try_prefix(EDIT_SCAN_PREFIX)
    clash = [v for v in added if v in set(scanned)]
    if clash:
        raise ValueError(f"values already present in the set: {clash}")

    def stream() -> Iterator[Fraction]:
        yield from added
        yield from spec.make_stream()

    if isinstance(spec.descriptor, Fin):
        descriptor = Fin(spec.descriptor.size + len(added))
    else:
        descriptor = None
    oracle = (
        _union_oracle([spec.gap_oracle, _finite_oracle(added)])
        if spec.gap_oracle is not None
        else None
    )
    name = f"{spec.name}+add=" + ";".join(str(v) for v in added)
    return SetSpec(name, stream, descriptor, oracle)


def shift_spec(spec: SetSpec, m: int) -> SetSpec:
    """Spec whose natural listing starts ``m`` places into the original one.

    As a set this removes the first ``m`` listed values. The order type of
    the remainder is not derivable from the original descriptor in general
    (the dropped values need not be extremes), so no descriptor is declared.
    """
    if m < 0:
        raise ValueError(f"shift must be nonnegative, got {m}")
    if m == 0:
        return spec
    removed = spec.listing().try_prefix(m)

    def stream() -> Iterator[Fraction]:
        ls = spec.listing()
        k = m
        while True:
            try:
                yield ls.value_at(k)
            except ListingExhausted:
                return
            k += 1

    oracle = (
        _minus_finite_oracle(spec.gap_oracle, removed)
        if spec.gap_oracle is not None
        else None
    )
    return SetSpec(f"{spec.name}+shift={m}", stream, None, oracle)
