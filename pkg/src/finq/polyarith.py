"""
Exact dense univariate polynomials over the integers and the rationals.

A polynomial is stored as a tuple of coefficients, constant term first, with
trailing zeros stripped, so the zero polynomial is the empty tuple. Thus
``IntPolynomial([1, 0, 1])`` is ``X^2 + 1``.

Besides ring arithmetic this module provides the cyclotomic machinery used by
the rest of the package: cyclotomic polynomials, the minimal polynomial of
``2cos(pi/m)``, resultants, the Bezout identities
``A_d * Phi_n + B_d * (X^d - 1) = N_d`` and the modulus ``N(n)``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _trim(coeffs: Sequence) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _fmt(coeffs: Sequence, var: str) -> str:
    if not coeffs:
        return "0"
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class _DensePoly:
    __slots__ = ("coeffs",)

    _coerce = staticmethod(lambda c: c)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _trim([self._coerce(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: Sequence):
        obj = object.__new__(cls)
        obj.coeffs = _trim(coeffs)
        return obj

    @classmethod
    def monomial(cls, degree: int, coeff: Number = 1):
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: Number):
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, _DensePoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"{type(self).__name__}('{self}')"

    def __str__(self) -> str:
        return _fmt(self.coeffs, "X")

    def format(self, var: str = "X") -> str:
        return _fmt(self.coeffs, var)

    # arithmetic ----------------------------------------------------------

    def _result_type(self, other):
        if isinstance(other, RatPolynomial) or isinstance(self, RatPolynomial):
            return RatPolynomial
        if isinstance(other, Fraction) and other.denominator != 1:
            return RatPolynomial
        return type(self)

    def _as_coeffs(self, other):
        if isinstance(other, _DensePoly):
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return (other,)
        return None

    def __add__(self, other):
        oc = self._as_coeffs(other)
        if oc is None:
            return NotImplemented
        a, b = self.coeffs, oc
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return self._result_type(other)._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (_DensePoly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = self._as_coeffs(other)
        if oc is None:
            return NotImplemented
        a, b = self.coeffs, oc
        if not a or not b:
            return self._result_type(other)._raw(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self._result_type(other)._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self)([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element supporting + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return type(self)._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other):
        """Return ``self(other(X))``."""
        acc = type(self)._raw(())
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


class IntPolynomial(_DensePoly):
    """Polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            return c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            if hasattr(c, "__index__"):
                return int(c)
            raise TypeError(f"expected integer coefficient, got {c!r}")
        return c

    def content(self) -> int:
        return functools.reduce(math.gcd, self.coeffs, 0)

    def exact_div(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Divide by a polynomial with leading coefficient +-1; the remainder must vanish."""
        q, r = divmod_poly(self, divisor)
        if not r.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return IntPolynomial(q.coeffs)

    def to_rational(self) -> "RatPolynomial":
        return RatPolynomial(self.coeffs)


class RatPolynomial(_DensePoly):
    """Polynomial with rational coefficients kept in lowest terms."""

    __slots__ = ()

    @staticmethod
    def _coerce(c):
        return c if isinstance(c, Fraction) else Fraction(c)

    @classmethod
    def _raw(cls, coeffs):
        return super()._raw([c if isinstance(c, Fraction) else Fraction(c) for c in coeffs])

    def monic(self) -> "RatPolynomial":
        if self.is_zero():
            return self
        lc = self.lc
        return RatPolynomial._raw([c / lc for c in self.coeffs])

    def denominator_lcm(self) -> int:
        return functools.reduce(lambda a, c: a * c.denominator // math.gcd(a, c.denominator), self.coeffs, 1)

    def clear_denominators(self) -> IntPolynomial:
        """Scale by the lcm of the denominators; the result has integer coefficients."""
        m = self.denominator_lcm()
        return IntPolynomial([c * m for c in self.coeffs])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_int(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)


def divmod_poly(a: _DensePoly, b: _DensePoly):
    """Polynomial long division ``a = q*b + r`` with ``deg r < deg b``.

    Works over the rationals; when ``b`` has unit leading coefficient and both
    inputs are integral the quotient and remainder are integral too.
    """
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    integral = (
        isinstance(a, IntPolynomial) and isinstance(b, IntPolynomial) and b.lc in (1, -1)
    )
    rem = list(a.coeffs)
    db = b.degree
    lc = b.lc
    if len(rem) - 1 < db:
        cls = IntPolynomial if integral else RatPolynomial
        return cls._raw(()), cls._raw(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        f = c * lc if integral else Fraction(c) / lc  # lc is +-1 when integral
        quot[i - db] = f
        for j, bc in enumerate(b.coeffs):
            rem[i - db + j] -= f * bc
    cls = IntPolynomial if integral else RatPolynomial
    return cls._raw(quot), cls._raw(rem)


def gcd_poly(a: _DensePoly, b: _DensePoly) -> RatPolynomial:
    """Monic gcd over the rationals."""
    a, b = RatPolynomial(a.coeffs), RatPolynomial(b.coeffs)
    while not b.is_zero():
        a, b = b, divmod_poly(a, b)[1]
    return a.monic()


def ext_euclid(a: _DensePoly, b: _DensePoly):
    """Return ``(g, s, t)`` over the rationals with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = RatPolynomial(a.coeffs), RatPolynomial(b.coeffs)
    s0, s1 = RatPolynomial([1]), RatPolynomial(())
    t0, t1 = RatPolynomial(()), RatPolynomial([1])
    while not r1.is_zero():
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lc = r0.lc
    return r0.monic(), s0 * (1 / lc), t0 * (1 / lc)


# number theory helpers ---------------------------------------------------


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# cyclotomic machinery ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial, by exact division of X^n - 1 by the lower ones.

    >>> cyclotomic(6)
    IntPolynomial('X^2 - X + 1')
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"cyclotomic index must be a positive integer, got {n!r}")
    poly = IntPolynomial.monomial(n) - 1
    for d in divisors(n)[:-1]:
        poly = poly.exact_div(cyclotomic(d))
    return poly


@functools.lru_cache(maxsize=None)
def real_cyclotomic(m: int) -> IntPolynomial:
    """Minimal polynomial of ``2cos(pi/m)`` over Q, for m > 2.

    Phi_{2m} is palindromic of degree 2k; writing X^{-k} Phi_{2m}(X) as a
    combination of X^j + X^{-j} and using X^j + X^{-j} = D_j(X + 1/X), with
    D_0 = 2, D_1 = Y and D_{j+1} = Y D_j - D_{j-1}, gives the polynomial in Y.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m <= 2:
        raise ValueError(f"real_cyclotomic requires an integer m > 2, got {m!r}")
    phi = cyclotomic(2 * m)
    k = phi.degree // 2
    y = IntPolynomial([0, 1])
    dickson = [IntPolynomial([2]), y]
    while len(dickson) <= k:
        dickson.append(y * dickson[-1] - dickson[-2])
    psi = IntPolynomial([phi[k]])
    for j in range(1, k + 1):
        psi = psi + dickson[j] * phi[k + j]
    return psi


def resultant(p: _DensePoly, q: _DensePoly) -> Number:
    """Resultant of two nonzero polynomials via the Euclidean remainder sequence.

    Sign convention is that of the Sylvester determinant:
    ``Res(P, Q) = lc(P)^deg Q * lc(Q)^deg P * prod(a_i - b_j)`` over the roots
    a_i of P and b_j of Q, so ``Res(X - a, X - b) = a - b``. Integer inputs give
    an int; rational inputs give a Fraction.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    integral = isinstance(p, IntPolynomial) and isinstance(q, IntPolynomial)
    a, b = RatPolynomial(p.coeffs), RatPolynomial(q.coeffs)
    res = Fraction(1)
    # Res(A, B) = (-1)^(deg A deg B) lc(B)^(deg A - deg R) Res(B, R), R = A mod B
    while b.degree > 0:
        r = divmod_poly(a, b)[1]
        if r.is_zero():
            return 0
        if (a.degree * b.degree) % 2:
            res = -res
        res *= b.lc ** (a.degree - r.degree)
        a, b = b, r
    res *= b.lc ** a.degree
    if integral:
        assert res.denominator == 1
        return res.numerator
    return res


@dataclass(frozen=True)
class BezoutEntry:
    d: int
    A: IntPolynomial
    B: IntPolynomial
    N_d: int


@dataclass(frozen=True)
class CyclotomicBezout:
    """Bezout data for Phi_n against X^d - 1 over every proper divisor d, and N = lcm |N_d|."""

    n: int
    entries: tuple[BezoutEntry, ...]
    N: int

    def check(self) -> bool:
        phi = cyclotomic(self.n)
        for e in self.entries:
            xd = IntPolynomial.monomial(e.d) - 1
            if e.A * phi + e.B * xd != IntPolynomial([e.N_d]):
                return False
            if e.N_d == 0 or self.N % e.N_d:
                return False
        return self.N > 0


def bezout_reduction(n: int, d: int) -> tuple[IntPolynomial, IntPolynomial, int]:
    """Integer polynomials A, B and N_d = Res(Phi_n, X^d - 1) with A*Phi_n + B*(X^d - 1) = N_d."""
    if not isinstance(n, int) or n <= 1:
        raise ValueError(f"n must be an integer > 1, got {n!r}")
    if not isinstance(d, int) or d < 1 or d >= n or n % d:
        raise ValueError(f"{d!r} is not a proper divisor of {n}")
    phi = cyclotomic(n)
    xd = IntPolynomial.monomial(d) - 1
    n_d = resultant(phi, xd)
    g, s, t = ext_euclid(phi, xd)
    if g.degree != 0:
        raise ArithmeticError(f"Phi_{n} and X^{d}-1 are not coprime")
    a = (s * n_d).to_int()
    b = (t * n_d).to_int()
    return a, b, n_d


@functools.lru_cache(maxsize=None)
def modulus_bound(n: int) -> CyclotomicBezout:
    """Bezout data for n together with N(n), the lcm of |N_d| over proper divisors d of n."""
    if not isinstance(n, int) or n <= 1:
        raise ValueError(f"n must be an integer > 1, got {n!r}")
    entries = []
    big_n = 1
    for d in divisors(n)[:-1]:
        a, b, n_d = bezout_reduction(n, d)
        entries.append(BezoutEntry(d, a, b, n_d))
        big_n = math.lcm(big_n, abs(n_d))
    return CyclotomicBezout(n, tuple(entries), big_n)
