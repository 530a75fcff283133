"""Seeded generators of random conjugacy problems shared by the fuzz tests."""

import random

from twistconj.conjugacy import certify_distinct
from twistconj.homomorphism import TwistedPair, sample_hom, twisted_image
from twistconj.remnant import min_gap
from twistconj.words import sample_word


def strict_pairs(seed, count, n=2, m=2, phi_p=7, psi_p=2):
    """Pairs with ``|Rem_phi a_i| > |psi(a_i)|`` for every generator."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pair = TwistedPair(sample_hom(n, m, phi_p, rng), sample_hom(n, m, psi_p, rng))
        gap = min_gap(pair)
        if gap is not None and gap >= 1:
            out.append(pair)
    return out


def bsl_round_trips(seed, count, max_z=3):
    """``(pair, u, v, z)`` with ``u = phi(z) v psi(z)^-1`` for strict pairs."""
    rng = random.Random(seed)
    cases = []
    for pair in strict_pairs(seed + 1, count):
        v = sample_word(pair.codomain_rank, 6, rng)
        z = sample_word(pair.domain_rank, max_z, rng)
        u = twisted_image(pair, v, z)
        cases.append((pair, u, v, z))
    return cases


def certified_triples(seed, count, n=2, m=2, p=5, psi_p=1):
    """``(pair, u, v)`` on which the distinctness certificate fires."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        pair = TwistedPair(sample_hom(n, m, p, rng), sample_hom(n, m, psi_p, rng))
        u, v = sample_word(m, p, rng), sample_word(m, p, rng)
        if certify_distinct(pair, u, v) is not None:
            out.append((pair, u, v))
    return out

