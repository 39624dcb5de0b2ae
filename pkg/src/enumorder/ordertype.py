"""Symbolic linear-order shapes for the built-in set families.

The algebra is deliberately small: finite blocks, an ascending infinite block
(``W``), a descending infinite block (``W*``), dense interval blocks, and
finite concatenations of blocks. Within this algebra distinct normal forms
denote non-isomorphic linear orders, which is what makes structural equality
of normalized descriptors a sound refutation route for co-order claims: two
listings that agree on every index pair induce an order isomorphism between
the underlying sets.

Block signatures (the ascending/descending pattern of all-infinite
concatenations) are additionally invariant under finite edits of the set, so
a signature mismatch refutes even co-order up to finite differences. Dense
blocks are excluded from that route: deleting finitely many points can move a
dense block's endpoints, so their interaction with finite edits is not
settled here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class UnsupportedDescriptorError(ValueError):
    """The descriptor lies outside the shape a routine supports."""


class DescriptorParseError(ValueError):
    """Text is not a descriptor literal."""


@dataclass(frozen=True)
class Fin:
    size: int


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class OmegaStar:
    pass


@dataclass(frozen=True)
class Dense:
    left_closed: bool
    right_closed: bool


@dataclass(frozen=True)
class Concat:
    blocks: tuple["Descriptor", ...]


Descriptor = Fin | Omega | OmegaStar | Dense | Concat

OMEGA = Omega()
OMEGA_STAR = OmegaStar()


def normalize(d: Descriptor) -> Descriptor:
    """Canonical form: flat concatenations, adjacent finite blocks merged,
    empty finite blocks dropped, singleton concatenations unwrapped.

    Idempotent by construction.
    """
    if not isinstance(d, Concat):
        return d
    flat: list[Descriptor] = []
    for block in d.blocks:
        block = normalize(block)
        inner = block.blocks if isinstance(block, Concat) else (block,)
        for piece in inner:
            if piece == Fin(0):
                continue
            if flat and isinstance(piece, Fin) and isinstance(flat[-1], Fin):
                flat[-1] = Fin(flat[-1].size + piece.size)
            else:
                flat.append(piece)
    if not flat:
        return Fin(0)
    if len(flat) == 1:
        return flat[0]
    return Concat(tuple(flat))


def isomorphic(d1: Descriptor, d2: Descriptor) -> bool:
    """Structural equality after normalization."""
    return normalize(d1) == normalize(d2)


class Direction(Enum):
    ASC = "ASC"
    DESC = "DESC"


def block_signature(spec_or_descriptor) -> list[Direction]:
    """Ascending/descending pattern of an all-infinite-block descriptor.

    Accepts a set spec (its ``descriptor`` attribute is used) or a bare
    descriptor. Only ``W``/``W*`` and concatenations of them are supported.
    """
    d = getattr(spec_or_descriptor, "descriptor", spec_or_descriptor)
    if d is None:
        raise UnsupportedDescriptorError("no descriptor declared")
    d = normalize(d)
    blocks = d.blocks if isinstance(d, Concat) else (d,)
    signature = []
    for block in blocks:
        if isinstance(block, Omega):
            signature.append(Direction.ASC)
        elif isinstance(block, OmegaStar):
            signature.append(Direction.DESC)
        else:
            raise UnsupportedDescriptorError(
                f"block {format_descriptor(block)} is outside the W/W* signature shape"
            )
    return signature


@dataclass(frozen=True)
class Refuted:
    reason: str


def refute_type2(spec_a, spec_b) -> Refuted | None:
    """Refute co-order-up-to-finite-edits by signature mismatch.

    Returns a :class:`Refuted` verdict when both inputs have supported block
    signatures and the signatures differ; finite edits cannot change the
    signature of infinite blocks, so differing signatures are a sound
    refutation. Returns ``None`` (unknown) otherwise: equal signatures refute
    nothing, and unsupported shapes are out of this route's scope.
    """
    try:
        sig_a = block_signature(spec_a)
        sig_b = block_signature(spec_b)
    except UnsupportedDescriptorError:
        return None
    if sig_a == sig_b:
        return None
    fmt = lambda sig: "[" + ",".join(s.value for s in sig) + "]"
    return Refuted(f"signature {fmt(sig_a)} != {fmt(sig_b)}")


def format_descriptor(d: Descriptor) -> str:
    if isinstance(d, Fin):
        return f"FIN({d.size})"
    if isinstance(d, Omega):
        return "W"
    if isinstance(d, OmegaStar):
        return "W*"
    if isinstance(d, Dense):
        return "Q" + ("[" if d.left_closed else "(") + ("]" if d.right_closed else ")")
    return " + ".join(format_descriptor(b) for b in d.blocks)


_FIN_RE = re.compile(r"^FIN\((\d+)\)$")
_DENSE_RE = re.compile(r"^Q([\[(])([\])])$")


def parse_descriptor(text: str) -> Descriptor:
    """Inverse of :func:`format_descriptor` on canonical text."""
    parts = [part.strip() for part in text.split("+")]
    blocks = [_parse_block(part) for part in parts]
    if len(blocks) == 1:
        return blocks[0]
    return Concat(tuple(blocks))


def _parse_block(text: str) -> Descriptor:
    if text == "W":
        return OMEGA
    if text == "W*":
        return OMEGA_STAR
    match = _FIN_RE.match(text)
    if match:
        return Fin(int(match.group(1)))
    match = _DENSE_RE.match(text)
    if match:
        return Dense(match.group(1) == "[", match.group(2) == "]")
    raise DescriptorParseError(f"not a descriptor block: {text!r}")
