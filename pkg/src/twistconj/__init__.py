"""Doubly-twisted conjugacy in free groups via remnant conditions."""

__version__ = "0.1.0"

from .words import (  # noqa: E402
    RankError,
    Word,
    WordError,
    ball_size,
    cancellation_len,
    concat,
    enumerate_ball,
    format_word,
    invert,
    parse_word,
    sample_word,
    sphere_size,
)
from .homomorphism import (  # noqa: E402
    FreeHomomorphism,
    TwistedPair,
    apply,
    parse_hom,
    star_extension,
    twisted_image,
)
from .remnant import RemnantReport, min_gap, remnant_length, remnant_report  # noqa: E402
from .conjugacy import (  # noqa: E402
    Conjugate,
    Distinct,
    NotConjugate,
    Undecided,
    certify_distinct,
    decide,
    membership,
    solution_bound,
)
