from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from finq.errors import CompositeModulus, DenominatorAtPlace, NotMonic, Reducible
from finq.numberfield import nf_charpoly, nf_make, nf_places_above, nf_reduce, place_from_factor, rationals
from finq.polyarith import RatPolynomial

from oracles import X, poly_expr

OMEGA = (1, -1, 1)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@pytest.fixture(scope="module")
def K():
    return nf_make(OMEGA)


def test_field_examples(K):
    Q = nf_make((0, 1))
    assert Q.is_rational() and Q.degree == 1
    assert K.degree == 2 and K.irreducibility == "proven"
    with pytest.raises(Reducible) as info:
        nf_make((-1, 0, 1))
    assert info.value.factors
    with pytest.raises(NotMonic):
        nf_make((1, 2))


@pytest.mark.parametrize(
    "coeffs",
    [(4, 0, 0, 0, 1), (1, 0, -10, 0, 1), (-2, 0, 0, 0, 0, 0, 1), (1, 1, 1, 1, 1), (-3, 0, 0, 0, 1)],
)
def test_irreducibility_agrees_with_sympy(coeffs):
    expected = sympy.Poly(poly_expr(coeffs), X).is_irreducible
    if expected:
        assert nf_make(coeffs).irreducibility in ("proven", "assumed")
    else:
        with pytest.raises(Reducible):
            nf_make(coeffs)


def test_charpoly_examples(K):
    Q = rationals()
    assert nf_charpoly(Q(5)) == RatPolynomial([-5, 1])
    w = K.gen
    assert nf_charpoly(w) == RatPolynomial([1, -1, 1])
    assert nf_charpoly(2 * w - 1) == RatPolynomial([3, 0, 1])
    assert (2 * w - 1) ** 2 == K(-3)


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs, fracs)
def test_field_arithmetic_matches_sympy(a, b, c, d):
    K = nf_make((-2, 0, 0, 1))  # cube root of 2
    x, y = K.from_coeffs([a, b]), K.from_coeffs([c, d, a])
    r = sympy.Rational
    alpha = sympy.root(2, 3)
    sx = r(str(a)) + r(str(b)) * alpha
    sy = r(str(c)) + r(str(d)) * alpha + r(str(a)) * alpha**2
    prod = x * y
    got = sum(r(str(cf)) * alpha**i for i, cf in enumerate(prod.coeffs))
    assert sympy.simplify(got - sx * sy) == 0
    if x:
        assert x * x.inverse() == K.one
        assert nf_charpoly(x)(x) == 0
        assert (x * y).norm() == x.norm() * y.norm()


def test_inverse_of_zero(K):
    with pytest.raises(ZeroDivisionError):
        K.zero.inverse()


def test_places_examples(K):
    p7 = nf_places_above(K, 7)
    assert [tuple(v.factor.coeffs) for v in p7] == [(2, 1), (4, 1)]
    assert all(v.residue_degree == 1 and not v.ramified for v in p7)
    (p11,) = nf_places_above(K, 11)
    assert p11.residue_degree == 2
    (p3,) = nf_places_above(K, 3)
    assert p3.ramified and tuple(p3.factor.coeffs) == (1, 1)
    with pytest.raises(CompositeModulus):
        nf_places_above(K, 21)


def test_place_roots_are_the_expected_residues(K):
    # factors x - 3 and x - 5 mod 7
    roots = sorted(-v.factor[0] % 7 for v in nf_places_above(K, 7))
    assert roots == [3, 5]


def test_place_from_factor(K):
    v = place_from_factor(K, 7, (4, 1))
    assert v.p == 7 and v.residue_degree == 1
    with pytest.raises(ValueError):
        place_from_factor(K, 7, (1, 1))


def test_reduce_examples(K):
    Q = rationals()
    (v7,) = nf_places_above(Q, 7)
    assert nf_reduce(Q(10), v7) == 3
    with pytest.raises(DenominatorAtPlace):
        nf_reduce(Q(Fraction(1, 7)), v7)
    v = place_from_factor(K, 7, (4, 1))
    assert nf_reduce(K.gen, v) == 3


@settings(max_examples=60, deadline=None)
@given(fracs, fracs, fracs, fracs, st.sampled_from([7, 11, 13, 3]))
def test_reduction_is_a_ring_map(a, b, c, d, p):
    K = nf_make(OMEGA)
    x, y = K.from_coeffs([a, b]), K.from_coeffs([c, d])
    for v in nf_places_above(K, p):
        if not (x.is_integral_at(p) and y.is_integral_at(p)):
            return
        assert nf_reduce(x * y, v) == nf_reduce(x, v) * nf_reduce(y, v)
        assert nf_reduce(x + y, v) == nf_reduce(x, v) + nf_reduce(y, v)


def test_s_integrality():
    Q = rationals()
    x = Q(Fraction(5, 12))
    assert x.is_s_integral([2, 3]) and not x.is_s_integral([2])
    assert x.denominators() == [12]
