"""Enumeration-order analysis for computably enumerable sets of rationals."""

from .coorder import (
    Agree,
    Cell,
    CoorderVerdict,
    Disagree,
    FuelExhausted,
    GapEmpty,
    MatchSuccess,
    ShiftPair,
    WitnessPair,
    WitnessReport,
    brute_force_coorder_oracle,
    finite_coorder,
    match_listing,
    order_pattern,
    prefix_coorder,
    project_first,
    project_second,
    search_shift_witnesses,
    witness_pairs,
)
from .listings import (
    Listing,
    ListingExhausted,
    SetSpec,
    add_finite,
    build_A,
    build_T,
    builtin_dyadic,
    builtin_harmonic,
    builtin_thirds,
    finite_listing,
    interleave,
    rationals,
    rationals_in_interval,
    remove_finite,
    shift,
    shift_spec,
)
from .ordertype import (
    OMEGA,
    OMEGA_STAR,
    Concat,
    Dense,
    Descriptor,
    Direction,
    Fin,
    Refuted,
    block_signature,
    isomorphic,
    normalize,
    refute_type2,
)
from .rational import (
    Ordering,
    Rational,
    compare,
    format_rational,
    make_rational,
    parse_rational,
)
from .seqlang import SequenceExpr, evaluate, parse, to_listing, to_text

__version__ = "0.1.0"
