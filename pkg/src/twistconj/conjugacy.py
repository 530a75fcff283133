"""Deciding doubly-twisted conjugacy ``u = phi(z) v psi(z)^-1`` in free groups.

Two remnant-based tools are combined:

* a certificate: if ``phi * u * v`` has remnant and each ``Rem(a_i)`` is at
  least as long as ``psi(a_i)``, then u and v lie in different classes;
* bounded solution length: if ``|Rem_phi a_i| > |psi(a_i)|`` for all i, with
  ``l`` the smallest gap, every solution satisfies ``|z| <= (|u|+|v|)/l``
  and a finite search decides the question.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

from .homomorphism import (
    FreeHomomorphism,
    TwistedPair,
    star_extension,
    twisted_image,
)
from .remnant import RemnantReport, min_gap, remnant_length, remnant_report
from .words import RankError, Word, _mul, alphabet, enumerate_ball

__all__ = [
    "UndecidedReason",
    "Certificate",
    "Distinct",
    "Conjugate",
    "NotConjugate",
    "Undecided",
    "Decision",
    "certify_distinct",
    "solution_bound",
    "bsl_decide",
    "decide",
    "singly_twisted_decide",
    "membership",
    "certify_injective",
    "oracle_decide",
]


class UndecidedReason(str, enum.Enum):
    STRICT_INEQUALITY_FAILS = "StrictInequalityFails"
    NO_REMNANT = "NoRemnant"
    NO_APPLICABLE_METHOD = "NoApplicableMethod"


@dataclass(frozen=True)
class Certificate:
    """Verified remnant inequality for ``phi * u * v`` (a proof that [u] != [v])."""

    report: RemnantReport
    kind: str = "WeakRemnantInequality"


@dataclass(frozen=True)
class Distinct:
    certificate: Certificate
    verdict = "Distinct"


@dataclass(frozen=True)
class Conjugate:
    witness: Word
    bound: int | None = None
    candidates: int = 0
    verdict = "Conjugate"


@dataclass(frozen=True)
class NotConjugate:
    exhausted_bound: int
    candidates: int = 0
    verdict = "NotConjugate"


@dataclass(frozen=True)
class Undecided:
    reason: UndecidedReason
    verdict = "Undecided"


Decision = Union[Distinct, Conjugate, NotConjugate, Undecided]


def _check(pair: TwistedPair, u: Word, v: Word) -> None:
    for w in (u, v):
        if w.rank != pair.codomain_rank:
            raise RankError(
                f"{w!r} is not in the codomain of rank {pair.codomain_rank}"
            )


def certify_distinct(pair: TwistedPair, u: Word, v: Word) -> Certificate | None:
    """Return a certificate that [u] != [v], or None when the test is inconclusive."""
    _check(pair, u, v)
    if u == v or pair.codomain_rank < 2:
        return None
    report = remnant_report(star_extension(pair.phi, u, v).images)
    if not report.has_remnant:
        return None
    for entry, psi_image in zip(report.entries, pair.psi.images):
        if entry.length < len(psi_image):
            return None
    return Certificate(report)


def solution_bound(pair: TwistedPair, u: Word, v: Word) -> int | None:
    """``floor((|u| + |v|) / l)``; None unless the smallest gap ``l`` is positive."""
    _check(pair, u, v)
    gap = min_gap(pair)
    if gap is None or gap < 1:
        return None
    return (len(u) + len(v)) // gap


def _search(pair: TwistedPair, u: Word, v: Word, bound: int) -> tuple[Word | None, int]:
    # sphere-by-sphere walk of the ball in length-lex order; the images of
    # each word are grown from its parent's, one junction at a time
    n = pair.domain_rank
    phi, psi = pair.phi._table, pair.psi._table
    target, vl = u.letters, v.letters
    letters = alphabet(n)
    level: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]] = [((), (), ())]
    checked = 0
    for length in range(bound + 1):
        if length:
            nxt = []
            for z, fz, gz in level:
                back = -z[-1] if z else 0
                for g in letters:
                    if g != back:
                        nxt.append((z + (g,), _mul(fz, phi[g]), _mul(gz, psi[g])))
            level = nxt
        for z, fz, gz in level:
            checked += 1
            # u = phi(z) v psi(z)^-1  <=>  phi(z) v = u psi(z)
            if _mul(fz, vl) == _mul(target, gz):
                return Word._trusted(z, n), checked
    return None, checked


def bsl_decide(pair: TwistedPair, u: Word, v: Word) -> Decision:
    """Exhaust all ``|z| <= solution_bound`` in length-lex order."""
    bound = solution_bound(pair, u, v)
    if bound is None:
        return Undecided(UndecidedReason.STRICT_INEQUALITY_FAILS)
    witness, checked = _search(pair, u, v, bound)
    if witness is not None:
        return Conjugate(witness, bound, checked)
    return NotConjugate(bound, checked)


def decide(pair: TwistedPair, u: Word, v: Word) -> Decision:
    _check(pair, u, v)
    if u == v:
        return Conjugate(Word.identity(pair.domain_rank), None, 1)
    cert = certify_distinct(pair, u, v)
    if cert is not None:
        return Distinct(cert)
    if solution_bound(pair, u, v) is not None:
        return bsl_decide(pair, u, v)
    return Undecided(UndecidedReason.NO_APPLICABLE_METHOD)


def singly_twisted_decide(phi: FreeHomomorphism, u: Word, v: Word) -> Decision:
    """Twisted conjugacy for an endomorphism (psi is the identity)."""
    if phi.domain_rank != phi.codomain_rank:
        raise RankError("singly-twisted conjugacy needs an endomorphism")
    return decide(TwistedPair(phi, FreeHomomorphism.identity(phi.domain_rank)), u, v)


def membership(phi: FreeHomomorphism, w: Word) -> Decision:
    """Is ``w`` in the image of ``phi``?  A Conjugate witness z has ``phi(z) = w``."""
    if w.rank != phi.codomain_rank:
        raise RankError(f"{w!r} is not in the codomain of rank {phi.codomain_rank}")
    if remnant_length(phi) is None:
        return Undecided(UndecidedReason.NO_REMNANT)
    pair = TwistedPair(phi, FreeHomomorphism.trivial(phi.domain_rank, phi.codomain_rank))
    return bsl_decide(pair, w, Word.identity(phi.codomain_rank))


def certify_injective(phi: FreeHomomorphism) -> bool:
    """True proves injectivity; False means unknown."""
    return remnant_report(phi.images).has_remnant


def oracle_decide(pair: TwistedPair, u: Word, v: Word, k: int) -> Word | None:
    """First witness with ``|z| <= k`` by plain enumeration, no remnant theory used."""
    _check(pair, u, v)
    for z in enumerate_ball(pair.domain_rank, k):
        if twisted_image(pair, v, z) == u:
            return z
    return None
