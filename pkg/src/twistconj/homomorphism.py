"""Homomorphisms between free groups, stored as tuples of generator images."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .words import (
    RankError,
    Word,
    WordError,
    _inv,
    _mul,
    format_word,
    parse_word,
    sample_word,
)

__all__ = [
    "FreeHomomorphism",
    "TwistedPair",
    "apply",
    "star_extension",
    "twisted_image",
    "sample_hom",
    "parse_hom",
    "format_hom",
    "exponent_sums",
    "from_exponents",
]


@dataclass(frozen=True)
class FreeHomomorphism:
    """``F_n -> F_m`` determined by the images of ``a_1, ..., a_n``."""

    domain_rank: int
    codomain_rank: int
    images: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if self.domain_rank < 1 or self.codomain_rank < 1:
            raise WordError("ranks must be positive")
        if len(self.images) != self.domain_rank:
            raise RankError(
                f"expected {self.domain_rank} images, got {len(self.images)}"
            )
        for w in self.images:
            if not isinstance(w, Word) or w.rank != self.codomain_rank:
                raise RankError(f"image {w!r} is not a word of rank {self.codomain_rank}")

    @classmethod
    def from_words(cls, images: Sequence[Word]) -> FreeHomomorphism:
        if not images:
            raise WordError("a homomorphism needs at least one image")
        return cls(len(images), images[0].rank, tuple(images))

    @classmethod
    def identity(cls, n: int) -> FreeHomomorphism:
        return cls(n, n, tuple(Word.generator(i, n) for i in range(1, n + 1)))

    @classmethod
    def trivial(cls, n: int, m: int) -> FreeHomomorphism:
        return cls(n, m, (Word.identity(m),) * n)

    @cached_property
    def _table(self) -> dict[int, tuple[int, ...]]:
        # signed letter -> image letters, for both a_i and a_i^-1
        table = {}
        for i, w in enumerate(self.images, start=1):
            table[i] = w.letters
            table[-i] = _inv(w.letters)
        return table

    def image(self, letter: int) -> Word:
        return Word._trusted(self._table[letter], self.codomain_rank)

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __str__(self) -> str:
        return format_hom(self)


@dataclass(frozen=True)
class TwistedPair:
    """The pair (phi, psi) defining ``u ~ v  iff  u = phi(z) v psi(z)^-1``."""

    phi: FreeHomomorphism
    psi: FreeHomomorphism

    def __post_init__(self):
        if self.phi.domain_rank != self.psi.domain_rank:
            raise RankError("phi and psi have different domain ranks")
        if self.phi.codomain_rank != self.psi.codomain_rank:
            raise RankError("phi and psi have different codomain ranks")

    @property
    def domain_rank(self) -> int:
        return self.phi.domain_rank

    @property
    def codomain_rank(self) -> int:
        return self.phi.codomain_rank


def apply(phi: FreeHomomorphism, w: Word) -> Word:
    if w.rank != phi.domain_rank:
        raise RankError(f"word of rank {w.rank} fed to a map from rank {phi.domain_rank}")
    table = phi._table
    out: tuple[int, ...] = ()
    for g in w.letters:
        out = _mul(out, table[g])
    return Word._trusted(out, phi.codomain_rank)


def star_extension(phi: FreeHomomorphism, u: Word, v: Word) -> FreeHomomorphism:
    """Extend ``phi`` to ``G * Z * Z`` by sending the two new generators to u, v."""
    for w in (u, v):
        if w.rank != phi.codomain_rank:
            raise RankError(f"{w!r} is not in the codomain of rank {phi.codomain_rank}")
    return FreeHomomorphism(
        phi.domain_rank + 2, phi.codomain_rank, phi.images + (u, v)
    )


def twisted_image(pair: TwistedPair, v: Word, z: Word) -> Word:
    """The reduced word ``phi(z) v psi(z)^-1``."""
    if v.rank != pair.codomain_rank:
        raise RankError(f"{v!r} is not in the codomain of rank {pair.codomain_rank}")
    left = apply(pair.phi, z)
    right = apply(pair.psi, z)
    return Word._trusted(
        _mul(_mul(left.letters, v.letters), _inv(right.letters)), v.rank
    )


def sample_hom(n: int, m: int, p: int, rng: random.Random) -> FreeHomomorphism:
    """Each image independently uniform on the ball of radius ``p`` in ``F_m``."""
    return FreeHomomorphism(n, m, tuple(sample_word(m, p, rng) for _ in range(n)))


def parse_hom(text: str, codomain_rank: int, domain_rank: int | None = None) -> FreeHomomorphism:
    """Parse ``"babaa,aaBabbb"``; the keywords ``identity`` and ``trivial`` need ``domain_rank``."""
    key = text.strip().lower()
    if key in ("identity", "trivial"):
        if domain_rank is None:
            raise WordError(f"'{key}' needs an explicit domain rank")
        if key == "identity":
            if domain_rank != codomain_rank:
                raise RankError("identity needs equal domain and codomain ranks")
            return FreeHomomorphism.identity(domain_rank)
        return FreeHomomorphism.trivial(domain_rank, codomain_rank)
    parts = [p for p in text.split(",")]
    images = tuple(parse_word(p, codomain_rank) for p in parts)
    if domain_rank is not None and len(images) != domain_rank:
        raise RankError(f"expected {domain_rank} images, got {len(images)} in {text!r}")
    return FreeHomomorphism(len(images), codomain_rank, images)


def format_hom(phi: FreeHomomorphism) -> str:
    return ",".join(format_word(w) for w in phi.images)


def exponent_sums(phi: FreeHomomorphism) -> tuple[int, ...]:
    """Integer tuple of a homomorphism into the rank-1 free group (= Z)."""
    if phi.codomain_rank != 1:
        raise RankError("exponent sums identify homomorphisms only when the codomain is Z")
    return tuple(w.exponent_sum(1) for w in phi.images)


def from_exponents(degrees: Sequence[int]) -> FreeHomomorphism:
    images = tuple(Word([1 if d > 0 else -1] * abs(d), 1) for d in degrees)
    return FreeHomomorphism(len(images), 1, images)
