import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from finq.polyarith import (
    IntPolynomial,
    RatPolynomial,
    bezout_reduction,
    cyclotomic,
    divisors,
    divmod_poly,
    euler_phi,
    ext_euclid,
    gcd_poly,
    modulus_bound,
    real_cyclotomic,
    resultant,
)

from oracles import X, cyclotomic_ref, poly_expr, sylvester_resultant

small_ints = st.integers(-20, 20)
int_polys = st.lists(small_ints, min_size=0, max_size=6).map(IntPolynomial)
nonzero_polys = st.lists(small_ints, min_size=1, max_size=6).map(IntPolynomial).filter(lambda f: f.degree >= 0)


def P(*coeffs):
    return IntPolynomial(coeffs)


def test_representation_and_printing():
    assert P(1, 0, 1) == IntPolynomial([1, 0, 1, 0, 0])
    assert P().degree == -1 and P(0).is_zero()
    assert str(P(1, -1, 1)) == "X^2 - X + 1"
    assert P(-2, 0, 1).format("Y") == "Y^2 - 2"
    assert P(3, 2)(Fraction(1, 2)) == 4


def test_ring_arithmetic_examples():
    f, g = P(1, 1), P(-1, 1)
    assert f * g == P(-1, 0, 1)
    assert f - f == P()
    assert f**3 == P(1, 3, 3, 1)
    assert P(1, 2, 3).derivative() == P(2, 6)
    assert P(0, 0, 1).compose(P(1, 1)) == P(1, 2, 1)


@pytest.mark.parametrize("n, expected", [(1, [-1, 1]), (6, [1, -1, 1]), (8, [1, 0, 0, 0, 1])])
def test_cyclotomic_examples(n, expected):
    assert list(cyclotomic(n).coeffs) == expected


@pytest.mark.parametrize("n", range(1, 61))
def test_cyclotomic_matches_sympy(n):
    assert list(cyclotomic(n).coeffs) == cyclotomic_ref(n)


def test_cyclotomic_mobius_product():
    # Phi_n = prod_{d | n} (X^d - 1)^mu(n/d)
    for n in (12, 30, 36, 45, 60):
        num, den = P(1), P(1)
        for d in divisors(n):
            mu = sympy.mobius(n // d)
            factor = IntPolynomial([-1] + [0] * (d - 1) + [1])
            if mu == 1:
                num = num * factor
            elif mu == -1:
                den = den * factor
        assert num.exact_div(den) == cyclotomic(n)


def test_cyclotomic_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic(0)


def test_divisors_and_phi():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [euler_phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert all(cyclotomic(n).degree == euler_phi(n) for n in range(1, 80))


@pytest.mark.parametrize(
    "m, expected",
    [(3, [-1, 1]), (4, [-2, 0, 1]), (5, [-1, -1, 1]), (6, [-3, 0, 1]), (7, [1, -2, -1, 1])],
)
def test_real_cyclotomic_examples(m, expected):
    assert list(real_cyclotomic(m).coeffs) == expected


@pytest.mark.parametrize("m", range(3, 30))
def test_real_cyclotomic_roots_and_irreducibility(m):
    psi = real_cyclotomic(m)
    # every 2cos(pi k/m) with gcd(k, 2m) = 1 is a root
    for k in range(1, m, 2):
        if math.gcd(k, 2 * m) == 1:
            assert abs(float(psi(2 * math.cos(math.pi * k / m)))) < 1e-6 * 10 ** (psi.degree / 4)
    assert psi.is_monic()
    assert sympy.Poly(poly_expr(psi.coeffs), X).is_irreducible


def test_real_cyclotomic_rejects_small_m():
    for m in (0, 1, 2):
        with pytest.raises(ValueError):
            real_cyclotomic(m)


def test_resultant_examples():
    assert resultant(P(-2, 1), P(-5, 1)) == -3
    assert resultant(P(1, 0, 1), P(-1, 1)) == 2
    assert resultant(cyclotomic(6), P(-1, 0, 0, 1)) == 4


def test_resultant_rejects_zero():
    with pytest.raises(ValueError):
        resultant(P(), P(1, 1))


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_resultant_matches_sylvester_determinant(f, g):
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_resultant(f.coeffs, g.coeffs)


@settings(max_examples=60, deadline=None)
@given(int_polys, nonzero_polys)
def test_divmod_reconstructs(a, b):
    q, r = divmod_poly(a, b)
    assert q * b + r == a.to_rational()
    assert r.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(nonzero_polys, nonzero_polys)
def test_extended_euclid(a, b):
    g, s, t = ext_euclid(a, b)
    assert s * a + t * b == g
    assert g == gcd_poly(a, b)
    assert g.is_monic() or g.is_zero()
    assert divmod_poly(a, g)[1].is_zero() and divmod_poly(b, g)[1].is_zero()


def test_rational_polynomial_helpers():
    f = RatPolynomial([Fraction(1, 2), Fraction(2, 3), 2])
    assert f.monic() == RatPolynomial([Fraction(1, 4), Fraction(1, 3), 1])
    assert f.clear_denominators() == P(3, 4, 12)
    assert not f.is_integral()


@pytest.mark.parametrize("n, d, nd", [(6, 1, 1), (6, 2, 3), (8, 4, 16)])
def test_bezout_examples(n, d, nd):
    A, B, N_d = bezout_reduction(n, d)
    assert abs(N_d) == nd
    assert A * cyclotomic(n) + B * IntPolynomial([-1] + [0] * (d - 1) + [1]) == P(N_d)


def test_bezout_rejects_improper_divisor():
    for n, d in ((6, 6), (6, 4), (6, 0)):
        with pytest.raises(ValueError):
            bezout_reduction(n, d)


@pytest.mark.parametrize("n, N, nds", [(4, 4, [2, 4]), (6, 12, [1, 3, 4]), (8, 16, [2, 4, 16])])
def test_modulus_bound_examples(n, N, nds):
    cb = modulus_bound(n)
    assert cb.N == N
    assert [abs(e.N_d) for e in cb.entries] == nds
    assert cb.check()
