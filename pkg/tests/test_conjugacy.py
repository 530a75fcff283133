import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistconj.conjugacy import (
    Certificate,
    Conjugate,
    Distinct,
    NotConjugate,
    Undecided,
    UndecidedReason,
    bsl_decide,
    certify_distinct,
    certify_injective,
    decide,
    membership,
    oracle_decide,
    singly_twisted_decide,
    solution_bound,
)
from twistconj.homomorphism import (
    FreeHomomorphism,
    TwistedPair,
    apply,
    parse_hom,
    sample_hom,
    twisted_image,
)
from twistconj.remnant import remnant_report_bruteforce
from twistconj.words import RankError, Word, ball_size, enumerate_ball, sample_word

from conftest import w
from fuzz_cases import bsl_round_trips, certified_triples, strict_pairs


@pytest.fixture
def pair(example_phi, example_psi):
    return TwistedPair(example_phi, example_psi)


@pytest.fixture
def cert_case():
    return TwistedPair(parse_hom("aab,abb", 2), FreeHomomorphism.identity(2)), w("bba"), w("baa")


def test_certificate_fails_on_worked_example(pair):
    assert certify_distinct(pair, w("bab"), w("b^4a^2")) is None


def test_certificate_fires_on_positive_example(cert_case):
    p, u, v = cert_case
    cert = certify_distinct(p, u, v)
    assert isinstance(cert, Certificate)
    assert cert.kind == "WeakRemnantInequality"
    assert [len(x) for x in cert.report.remnants] == [1, 1, 1, 1]
    # the remnant oracle agrees on the extended tuple
    assert cert.report == remnant_report_bruteforce(p.phi.images + (u, v))


def test_certificate_absent_for_equal_words(pair, cert_case):
    assert certify_distinct(pair, w("bab"), w("bab")) is None
    p, u, _ = cert_case
    assert certify_distinct(p, u, u) is None


def test_solution_bound_examples(pair, example_phi):
    assert solution_bound(pair, w("bab"), w("b^4a^2")) == 3
    assert solution_bound(pair, Word.identity(2), Word.identity(2)) == 0
    trivial_psi = TwistedPair(example_phi, FreeHomomorphism.trivial(2, 2))
    assert solution_bound(trivial_psi, w("bab"), Word.identity(2)) == 0
    ident = FreeHomomorphism.identity(2)
    assert solution_bound(TwistedPair(ident, ident), w("a"), w("b")) is None


def test_bound_is_inclusive_at_integer_quotients(pair):
    # (|u| + |v|) / l = 9 / 3 exactly; length-3 words must still be searched
    result = bsl_decide(pair, w("bab"), w("b^4a^2"))
    assert result == NotConjugate(3, 53)


def test_bsl_finds_constructed_witness(pair):
    u = twisted_image(pair, Word.identity(2), w("a"))
    assert u == w("babaabb")
    assert solution_bound(pair, u, Word.identity(2)) == 2
    result = bsl_decide(pair, u, Word.identity(2))
    assert isinstance(result, Conjugate)
    assert result.witness == w("a")


def test_bsl_trivial_and_precondition(pair):
    assert bsl_decide(pair, w("bab"), w("bab")).witness == Word.identity(2)
    ident = FreeHomomorphism.identity(2)
    assert bsl_decide(TwistedPair(ident, ident), w("a"), w("b")) == Undecided(
        UndecidedReason.STRICT_INEQUALITY_FAILS
    )


def test_decide_pipeline(pair, cert_case):
    assert decide(pair, w("bab"), w("b^4a^2")) == NotConjugate(3, 53)
    assert isinstance(decide(*cert_case), Distinct)
    ident = FreeHomomorphism.identity(2)
    assert decide(TwistedPair(ident, ident), w("a"), w("b")) == Undecided(
        UndecidedReason.NO_APPLICABLE_METHOD
    )
    same = decide(pair, w("aB"), w("aB"))
    assert isinstance(same, Conjugate) and same.witness == Word.identity(2)


def test_decide_rank_mismatch(pair):
    with pytest.raises(RankError):
        decide(pair, w("a", 3), w("a"))


def test_singly_twisted(example_phi):
    u, v = w("bab"), w("b^4a^2")
    result = singly_twisted_decide(example_phi, u, v)
    ident_pair = TwistedPair(example_phi, FreeHomomorphism.identity(2))
    assert solution_bound(ident_pair, u, v) == 2
    witness = oracle_decide(ident_pair, u, v, 2)
    assert witness is None
    assert result == NotConjugate(2, 17)
    assert singly_twisted_decide(example_phi, u, u).witness == Word.identity(2)
    ident = FreeHomomorphism.identity(2)
    assert isinstance(singly_twisted_decide(ident, w("a"), w("b")), Undecided)
    with pytest.raises(RankError):
        singly_twisted_decide(parse_hom("ab,ba", 3), w("a", 3), w("b", 3))


def test_singly_twisted_finds_witnesses(example_phi):
    ident_pair = TwistedPair(example_phi, FreeHomomorphism.identity(2))
    for z in map(w, ["a", "B", "ab", "bA"]):
        u = twisted_image(ident_pair, w("b^4a^2"), z)
        result = singly_twisted_decide(example_phi, u, w("b^4a^2"))
        assert isinstance(result, Conjugate)
        assert twisted_image(ident_pair, w("b^4a^2"), result.witness) == u


def test_membership(example_phi):
    result = membership(example_phi, w("bab"))
    assert result == NotConjugate(0, 1)
    result = membership(example_phi, w("babaa"))
    assert isinstance(result, Conjugate) and result.witness == w("a")
    assert result.bound == 1
    assert membership(example_phi, Word.identity(2)).witness == Word.identity(2)
    assert membership(parse_hom("ab,b", 2), w("b")) == Undecided(UndecidedReason.NO_REMNANT)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=50, deadline=None)
def test_membership_recovers_preimages(seed):
    rng = random.Random(seed)
    phi = sample_hom(2, 2, 6, rng)
    if not certify_injective(phi):
        return
    z = sample_word(2, 4, rng)
    result = membership(phi, apply(phi, z))
    assert isinstance(result, Conjugate)
    # remnant makes phi injective, so the preimage is unique
    assert result.witness == z


def test_certify_injective(example_phi):
    assert certify_injective(example_phi)
    assert not certify_injective(parse_hom("ab,b", 2))
    assert not certify_injective(FreeHomomorphism.trivial(2, 2))


def test_oracle_examples(pair):
    assert oracle_decide(pair, w("bab"), w("b^4a^2"), 3) is None
    assert oracle_decide(pair, w("bab"), w("b^4a^2"), 0) is None
    rng = random.Random(3)
    for _ in range(20):
        z0 = sample_word(2, 3, rng)
        v = sample_word(2, 4, rng)
        u = twisted_image(pair, v, z0)
        found = oracle_decide(pair, u, v, len(z0))
        assert found is not None and twisted_image(pair, v, found) == u


def test_witness_is_length_lex_first():
    # phi(a) = phi(b) gives many witnesses; the first in length-lex order wins
    p = TwistedPair(parse_hom("ab,ab", 2), FreeHomomorphism.trivial(2, 2))
    u, v = w("abab"), Word.identity(2)
    witnesses = [z for z in enumerate_ball(2, 4) if twisted_image(p, v, z) == u]
    assert len(witnesses) > 1
    assert oracle_decide(p, u, v, 4) == min(witnesses, key=Word.sort_key) == w("aa")


def test_bsl_round_trip_fuzz():
    for p, u, v, z in bsl_round_trips(99, 150):
        bound = solution_bound(p, u, v)
        assert bound is not None and len(z) <= bound
        result = decide(p, u, v)
        assert isinstance(result, Conjugate)
        assert twisted_image(p, v, result.witness) == u


def test_bsl_matches_oracle_when_bound_is_small():
    rng = random.Random(8)
    compared = 0
    for p in strict_pairs(17, 300, phi_p=6, psi_p=1):
        u, v = sample_word(2, 3, rng), sample_word(2, 3, rng)
        bound = solution_bound(p, u, v)
        if bound > 4:
            continue
        compared += 1
        result = bsl_decide(p, u, v)
        witness = oracle_decide(p, u, v, bound)
        if witness is None:
            assert result == NotConjugate(bound, ball_size(2, bound))
        else:
            assert isinstance(result, Conjugate) and result.witness == witness
    assert compared > 100


def test_certificate_soundness_fuzz():
    for p, u, v in certified_triples(5, 60):
        assert oracle_decide(p, u, v, 5) is None
        # the opposite orientation must be certified too
        assert oracle_decide(p, v, u, 3) is None


def test_pipeline_never_contradicts_itself():
    rng = random.Random(21)
    for _ in range(200):
        p = TwistedPair(sample_hom(2, 2, 5, rng), sample_hom(2, 2, 1, rng))
        u, v = sample_word(2, 4, rng), sample_word(2, 4, rng)
        cert = certify_distinct(p, u, v)
        bsl = bsl_decide(p, u, v)
        if cert is not None:
            assert not isinstance(bsl, Conjugate)
            assert u != v


def test_decisions_are_deterministic(pair):
    u, v = w("bab"), w("b^4a^2")
    assert decide(pair, u, v) == decide(pair, u, v)
    p, u2, v2, _ = bsl_round_trips(3, 1)[0]
    assert decide(p, u2, v2) == decide(p, u2, v2)
