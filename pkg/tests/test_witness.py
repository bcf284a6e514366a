import dataclasses
from fractions import Fraction

import pytest

from finq.certio import load_preset
from finq.errors import NotSIntegral
from finq.numberfield import nf_places_above, rationals
from finq.polyarith import real_cyclotomic
from finq.psl2 import Mat2, mat_reduce, psl2_order
from finq.witness import (
    ALL_PRIMES,
    PAPER_CERTIFIED,
    VERIFIED,
    candidate_primes,
    certify_order_witness,
    empirical_witness_scan,
    excluded_primes_for,
    finitistic_profile,
    from_matrix,
    from_trace,
    from_word,
    verify_certificate,
)

Q = rationals()


def qmat(a, b, c, d):
    return Mat2(Q(a), Q(b), Q(c), Q(d))


def test_candidate_primes_examples():
    (c,) = candidate_primes(3, 4)
    assert c.p == 7 and c.signs == (1, -1)
    assert candidate_primes(0, 3) == []
    assert candidate_primes(1, 3) is ALL_PRIMES
    assert candidate_primes(3, 4, S=[7]) == []
    with pytest.raises(ValueError):
        candidate_primes(3, 2)


def test_candidates_cover_lemma_primes():
    # a prime p outside 2N where t has order m must divide psi(t) psi(-t)
    for m in (3, 4, 5, 7):
        excl = set(excluded_primes_for(m, ()))
        psi = real_cyclotomic(m)
        for t in (-9, 4, 11, 26):
            cands = {c.p for c in candidate_primes(t, m)}
            for hit in empirical_witness_scan(t, m, 400):
                if hit.p not in excl:
                    assert hit.p in cands
                    assert psi(t) * psi(-t) % hit.p == 0


def test_certificate_trace3_m4():
    c = certify_order_witness(from_trace(3), 4)
    assert c.ok and c.p == 7 and c.claimed_order == 4 and c.level == PAPER_CERTIFIED
    assert c.N == 16 and c.n == 8 and c.epsilon in (1, -1)
    assert verify_certificate(c)


def test_certificate_failures_and_fallback():
    f = certify_order_witness(from_trace(0), 3)
    assert not f.ok and f.reason == "Exceptional"
    c = certify_order_witness(from_trace(3), 3)
    assert c.ok and c.p == 2 and c.level == VERIFIED
    assert verify_certificate(c)
    assert certify_order_witness(from_matrix(-Mat2.identity(Q.one)), 3).reason == "DegenerateElement"


def test_certificate_all_primes_path():
    c = certify_order_witness(from_trace(1), 3)
    assert c.ok and c.p == 5 and c.level == PAPER_CERTIFIED


def test_certificate_respects_S_and_cap():
    c = certify_order_witness(from_trace(Fraction(1, 5)), 3, S=[5])
    assert c.ok and c.p != 5 and verify_certificate(c)
    with pytest.raises(NotSIntegral):
        certify_order_witness(from_trace(Fraction(1, 5)), 3)
    f = certify_order_witness(from_trace(3), 4, prime_cap=5)
    assert not f.ok and f.reason == "AllCandidatesRejected"
    with pytest.raises(ValueError):
        certify_order_witness(from_trace(3), 2)


def test_verify_rejects_edits():
    c = certify_order_witness(from_trace(3), 4)
    bad = verify_certificate(dataclasses.replace(c, claimed_order=8))
    assert not bad and "order mismatch" in bad.reason
    bad = verify_certificate(dataclasses.replace(c, p=11))
    assert not bad and "candidate/reduction mismatch" in bad.reason
    assert not verify_certificate(dataclasses.replace(c, level=VERIFIED))
    assert not verify_certificate(dataclasses.replace(c, N=8))


def test_certificate_matches_direct_reduction():
    c = certify_order_witness(from_trace(-13), 5)
    assert c.ok
    (v,) = nf_places_above(Q, c.p)
    assert psl2_order(mat_reduce(from_trace(-13).matrix, v)) == 5


def test_scan_examples():
    assert empirical_witness_scan(from_trace(0), 3, 1000) == []
    assert [h.p for h in empirical_witness_scan(from_trace(3), 3, 10)] == [2]
    assert [h.p for h in empirical_witness_scan(from_trace(3), 4, 10)] == [7]
    assert len(empirical_witness_scan(from_trace(3), 4, 10**4, first_only=True)) == 1


def test_profile_examples():
    unipotent = from_matrix(qmat(1, 1, 0, 1))
    assert finitistic_profile(unipotent, range(2, 8), 100) == [(2, 2), (3, 3), (4, None), (5, 5), (6, None), (7, 7)]
    identity = from_matrix(Mat2.identity(Q.one))
    assert all(p is None for _, p in finitistic_profile(identity, range(2, 8), 100))
    # trace 3: psi_12(+-3) = 6, and at 2 and 3 the orders are 3 and 2, so m = 6 never occurs
    assert finitistic_profile(from_trace(3), range(3, 7), 100) == [(3, 2), (4, 7), (5, 5), (6, None)]


def test_figure8_commutator():
    preset = load_preset("figure8")
    el = from_word(preset, "a b a^-1 b^-1")
    assert el.trace == preset.field.from_coeffs([1, 1])
    levels = {}
    for m in (3, 4, 5):
        c = certify_order_witness(el, m, preset.S)
        assert c.ok and verify_certificate(c)
        levels[m] = (c.p, c.residue_degree, c.level)
    assert levels == {3: (7, 1, PAPER_CERTIFIED), 4: (7, 1, PAPER_CERTIFIED), 5: (2, 2, VERIFIED)}
