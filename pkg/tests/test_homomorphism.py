import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistconj.homomorphism import (
    FreeHomomorphism,
    TwistedPair,
    apply,
    exponent_sums,
    format_hom,
    from_exponents,
    parse_hom,
    sample_hom,
    star_extension,
    twisted_image,
)
from twistconj.words import RankError, Word, WordError, concat, invert, sample_word

from conftest import w

seeds = st.integers(0, 2**32 - 1)


def test_identity_and_trivial():
    ident = FreeHomomorphism.identity(2)
    for x in map(w, ["1", "a", "bAB", "aaBabbb"]):
        assert apply(ident, x) == x
    triv = FreeHomomorphism.trivial(2, 3)
    assert all(img == Word.identity(3) for img in triv.images)
    assert apply(triv, w("abAB")) == Word.identity(3)


def test_apply_example(example_phi):
    assert apply(example_phi, w("ab")) == w("babaaaaBabbb")
    assert apply(example_phi, w("aA")) == Word.identity(2)
    assert apply(example_phi, w("A")) == w("AABAB")


def test_apply_rank_mismatch(example_phi):
    with pytest.raises(RankError):
        apply(example_phi, w("a", 3))


def test_images_must_match_ranks():
    with pytest.raises(RankError):
        FreeHomomorphism(2, 2, (w("a"),))
    with pytest.raises(RankError):
        FreeHomomorphism(1, 2, (w("a", 3),))


@given(seeds)
def test_homomorphism_laws(seed):
    rng = random.Random(seed)
    phi = sample_hom(2, 3, 4, rng)
    x, y = sample_word(2, 6, rng), sample_word(2, 6, rng)
    assert apply(phi, concat(x, y)) == concat(apply(phi, x), apply(phi, y))
    assert apply(phi, invert(x)) == invert(apply(phi, x))


def test_star_extension(example_phi):
    ext = star_extension(example_phi, w("bab"), w("b^4a^2"))
    assert ext.domain_rank == 4
    assert [str(x) for x in ext.images] == ["babaa", "aaBabbb", "bab", "bbbbaa"]
    assert apply(ext, Word([3], 4)) == w("bab")
    assert apply(ext, Word([4], 4)) == w("b^4a^2")
    triv = star_extension(FreeHomomorphism.trivial(1, 2), Word.identity(2), Word.identity(2))
    assert all(not img for img in triv.images)


@given(seeds)
def test_star_extension_keeps_images(seed):
    rng = random.Random(seed)
    phi = sample_hom(3, 2, 5, rng)
    u, v = sample_word(2, 5, rng), sample_word(2, 5, rng)
    ext = star_extension(phi, u, v)
    assert ext.images[:3] == phi.images
    assert ext.images[3:] == (u, v)


def test_twisted_image_examples(example_phi, example_psi):
    pair = TwistedPair(example_phi, example_psi)
    v = w("b^4a^2")
    assert twisted_image(pair, v, Word.identity(2)) == v
    assert twisted_image(pair, Word.identity(2), w("a")) == w("babaabb")
    same = TwistedPair(example_phi, example_phi)
    assert twisted_image(same, Word.identity(2), w("abAAb")) == Word.identity(2)


@given(seeds)
def test_twisted_image_cocycle(seed):
    rng = random.Random(seed)
    pair = TwistedPair(sample_hom(2, 2, 4, rng), sample_hom(2, 2, 4, rng))
    v, z1, z2 = sample_word(2, 5, rng), sample_word(2, 4, rng), sample_word(2, 4, rng)
    lhs = twisted_image(pair, v, concat(z1, z2))
    rhs = concat(
        concat(apply(pair.phi, z1), twisted_image(pair, v, z2)),
        invert(apply(pair.psi, z1)),
    )
    assert lhs == rhs


def test_sample_hom():
    assert sample_hom(3, 2, 0, random.Random(1)) == FreeHomomorphism.trivial(3, 2)
    assert sample_hom(2, 2, 6, random.Random(9)) == sample_hom(2, 2, 6, random.Random(9))
    # images are drawn exactly as successive sample_word calls
    a, b = random.Random(4), random.Random(4)
    phi = sample_hom(3, 2, 5, a)
    assert phi.images == tuple(sample_word(2, 5, b) for _ in range(3))


def test_parse_hom_keywords_and_round_trip():
    assert parse_hom("identity", 2, 2) == FreeHomomorphism.identity(2)
    assert parse_hom("trivial", 3, 2) == FreeHomomorphism.trivial(2, 3)
    phi = parse_hom("babaa, aaBabbb", 2)
    assert format_hom(phi) == "babaa,aaBabbb"
    with pytest.raises(WordError):
        parse_hom("identity", 2)
    with pytest.raises(RankError):
        parse_hom("a,b", 2, 3)
    with pytest.raises(RankError):
        parse_hom("identity", 3, 2)


def test_exponent_sum_conversion():
    phi = from_exponents([3, -2, 0])
    assert phi.codomain_rank == 1
    assert exponent_sums(phi) == (3, -2, 0)
    assert apply(phi, w("abC", 3)) == Word([1], 1)
    with pytest.raises(RankError):
        exponent_sums(FreeHomomorphism.identity(2))


def test_twisted_pair_rank_checks(example_phi):
    with pytest.raises(RankError):
        TwistedPair(example_phi, FreeHomomorphism.identity(3))
