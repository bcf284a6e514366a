import itertools
from fractions import Fraction

import numpy as np
import pytest

from finq.errors import DenominatorAtPlace, LemmaInapplicable, NotSIntegral, NotUnimodular, OddOrder, UnknownGenerator
from finq.galoisfield import FiniteField, prime_field
from finq.numberfield import nf_places_above, rationals
from finq.psl2 import (
    GroupPreset,
    Mat2,
    Word,
    companion,
    has_psl2_order,
    in_reduction_kernel,
    mat_reduce,
    parse_word,
    psl2_order,
    psl2_order_bruteforce,
    psl2_order_from_trace,
    trace_of_root,
    word_eval,
)

from oracles import psl2_orders, sl2_all

Q = rationals()


def qmat(a, b, c, d):
    return Mat2(Q(a), Q(b), Q(c), Q(d))


@pytest.fixture
def ab():
    return GroupPreset(Q, (), {"a": qmat(1, 1, 0, 1), "b": qmat(1, 0, 1, 1)}, "test")


def test_word_parsing():
    w = parse_word("a b a^-1 b^-1")
    assert w.letters == (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    assert str(w) == "a b a^-1 b^-1"
    assert parse_word("a*b^(2).a") == Word((("a", 1), ("b", 2), ("a", 1)))
    assert parse_word("1") == Word() == parse_word("")
    assert str(w.inverse()) == "b a b^-1 a^-1"
    with pytest.raises(ValueError):
        parse_word("a^x")


def test_word_eval_examples(ab):
    assert word_eval(ab, Word()).is_identity()
    assert word_eval(ab, parse_word("a b a^-1 b^-1")) == qmat(3, -1, 1, 0)
    assert word_eval(ab, parse_word("a^3")) == qmat(1, 3, 0, 1)
    with pytest.raises(UnknownGenerator):
        word_eval(ab, parse_word("a c"))


def test_matrix_checks():
    with pytest.raises(NotUnimodular):
        qmat(2, 0, 0, 1)
    g = qmat(2, 3, 1, 2)
    assert g * g.inverse() == Mat2.identity(Q.one)
    assert g**-2 == (g * g).inverse()
    assert (-g).psl_equal(g)


def test_preset_validation():
    with pytest.raises(NotSIntegral):
        GroupPreset(Q, (), {"a": qmat(Fraction(1, 2), 0, 0, 2)})
    GroupPreset(Q, (2,), {"a": qmat(Fraction(1, 2), 0, 0, 2)})


def test_reduction_examples():
    (v7,) = nf_places_above(Q, 7)
    F7 = v7.residue_field
    red = mat_reduce(qmat(3, -1, 1, 0), v7)
    assert red == Mat2(F7(3), F7(6), F7(1), F7(0))
    assert mat_reduce(Mat2.identity(Q.one), v7).is_identity()
    minus = mat_reduce(-Mat2.identity(Q.one), v7)
    assert minus.is_pm_identity() and not minus.is_identity()
    with pytest.raises(DenominatorAtPlace) as info:
        mat_reduce(qmat(1, Fraction(1, 7), 0, 1), v7)
    assert info.value.entry == "b"
    assert in_reduction_kernel(qmat(8, 7, 7, Fraction(50, 8)), v7)
    assert not in_reduction_kernel(qmat(3, -1, 1, 0), v7)


def test_order_examples():
    F5, F7 = prime_field(5), prime_field(7)
    assert psl2_order(Mat2.identity(F7.one)) == 1
    assert psl2_order(-Mat2.identity(F7.one)) == 1
    assert psl2_order(Mat2(F5(1), F5(1), F5(0), F5(1))) == 5
    assert psl2_order(Mat2(F7(3), F7(6), F7(1), F7(0))) == 4
    with pytest.raises(NotUnimodular):
        psl2_order(Mat2(F7(2), F7(0), F7(0), F7(1), sl2=False))


@pytest.mark.parametrize("p, alpha, sign, m, trace", [(7, 3, 1, 3, 1), (17, 2, 1, 4, 11), (7, 3, -1, 3, 6)])
def test_order_from_trace_examples(p, alpha, sign, m, trace):
    F = prime_field(p)
    a = F(alpha)
    assert psl2_order_from_trace(F, a, sign) == m
    assert trace_of_root(a, sign) == trace
    assert psl2_order(companion(F(trace))) == m


def test_order_from_trace_errors():
    F7 = prime_field(7)
    with pytest.raises(OddOrder):
        psl2_order_from_trace(F7, F7(2), 1)
    with pytest.raises(LemmaInapplicable):
        psl2_order_from_trace(F7, F7(-1), 1)
    with pytest.raises(ValueError):
        psl2_order_from_trace(F7, F7(3), 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11])
def test_prime_field_orders_against_numpy(p):
    F = prime_field(p)
    mats = sl2_all(p)
    expected = psl2_orders(mats, p)
    for row, o in zip(mats.tolist(), expected.tolist()):
        g = Mat2(*(F(x) for x in row))
        assert psl2_order(g) == o == psl2_order_bruteforce(g)
        assert has_psl2_order(g, o) and not has_psl2_order(g, o + 1)


def _sl2(F):
    elems = list(F.elements())
    for a, b, c in itertools.product(elems, repeat=3):
        if a:
            yield Mat2(a, b, c, (1 + b * c) * a.inverse())
        elif b and b * c == -1:
            for d in elems:
                yield Mat2(a, b, c, d)


def _powering_order(g):
    h, k = g, 1
    while not h.is_pm_identity():
        h, k = h * g, k + 1
    return k


@pytest.mark.parametrize("p, f", [(2, (1, 1, 1)), (3, (1, 0, 1)), (2, (1, 1, 0, 1))])
def test_extension_field_orders_exhaustive(p, f):
    F = FiniteField(p, f)
    seen = {}
    for g in _sl2(F):
        o = psl2_order(g)
        assert o == _powering_order(g)
        seen[o] = seen.get(o, 0) + 1
    # element orders of PSL2(q) divide p, (q-1)/gcd and (q+1)/gcd
    q = F.q
    assert all(o == p or (q - 1) % o == 0 or (q + 1) % o == 0 for o in seen)


def test_sampled_orders_over_f25():
    F = FiniteField(5, (2, 0, 1))
    elems = list(F.elements())
    rng = np.random.default_rng(1)
    for _ in range(300):
        a, b, c = (elems[i] for i in rng.integers(0, len(elems), 3))
        if not a:
            continue
        g = Mat2(a, b, c, (1 + b * c) * a.inverse())
        assert psl2_order(g) == _powering_order(g)


def test_has_order_on_large_prime():
    p = 1000003
    F = prime_field(p)
    for t in (3, 5, 12345):
        g = companion(F(t))
        o = psl2_order(g)
        assert has_psl2_order(g, o)
        assert (p - 1) % o == 0 or (p + 1) % o == 0
