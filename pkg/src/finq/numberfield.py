"""
Number fields K = Q[x]/(f), their elements, places above rational primes and
the residue maps onto F_{p^d}.

Elements are rational coefficient vectors on the power basis 1, x, ...,
x^{d-1}. Integrality at a prime p is judged on these coefficients: an element
reduces at a place above p exactly when no coefficient denominator is
divisible by p.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import DenominatorAtPlace, NotMonic, Reducible
from .galoisfield import (
    FFElement,
    FiniteField,
    is_prime,
    pm_factor,
    pm_mul,
    pm_reduce,
    require_prime,
)
from .polyarith import IntPolynomial, RatPolynomial, divmod_poly

Rational = Union[int, Fraction]

# subset enumeration cap for the modular recombination irreducibility proof
RECOMBINATION_LIMIT = 4096


def _mignotte_bound(f: IntPolynomial) -> int:
    norm = math.isqrt(sum(c * c for c in f.coeffs)) + 1
    return (2 ** f.degree) * norm


def _symmetric_lift(coeffs, p):
    half = p // 2
    return [c - p if c > half else c for c in coeffs]


def _find_rational_root(f: IntPolynomial) -> Optional[int]:
    if f[0] == 0:
        return 0
    c = abs(f[0])
    for d in range(1, math.isqrt(c) + 1):
        if c % d == 0:
            for r in {d, -d, c // d, -(c // d)}:
                if f(r) == 0:
                    return r
    return None


def _check_irreducible(f: IntPolynomial) -> str:
    """Return "proven" or "assumed"; raise Reducible with a factorization if one is found.

    Degree <= 3: the rational root test decides. Otherwise factor f modulo a
    prime beyond twice the Mignotte bound, where every integer factor of f is
    the symmetric lift of a product of modular factors, and try all products
    of at most half the degree. If the subset count exceeds the cap the
    answer is only "assumed".
    """
    n = f.degree
    if n == 1:
        return "proven"
    root = _find_rational_root(f)
    if root is not None:
        lin = IntPolynomial([-root, 1])
        raise Reducible(f, [lin, f.exact_div(lin)])
    if n <= 3:
        return "proven"
    p = 2 * _mignotte_bound(f) + 1
    while True:
        if is_prime(p):
            factors = pm_factor(f.coeffs, p)
            if all(m == 1 for _, m in factors):
                break
        p += 1
    mods = [g for g, _ in factors]
    if len(mods) == 1:
        return "proven"
    if 2 ** len(mods) > RECOMBINATION_LIMIT:
        return "assumed"
    for size in range(1, len(mods) // 2 + 1):
        for combo in itertools.combinations(mods, size):
            prod = (1,)
            for g in combo:
                prod = pm_mul(prod, g, p)
            cand = IntPolynomial(_symmetric_lift(prod, p))
            if cand.degree < 1 or cand.degree > n // 2:
                continue
            q, r = divmod_poly(f, cand)
            if r.is_zero():
                raise Reducible(f, [cand, IntPolynomial(q.coeffs)])
    return "proven"


class NumberField:
    """Q[x]/(f) for a monic integer polynomial f, validated irreducible where feasible."""

    __slots__ = ("poly", "degree", "irreducibility", "_mul_table")

    def __init__(self, poly: IntPolynomial | Sequence[int], check: bool = True):
        if not isinstance(poly, IntPolynomial):
            poly = IntPolynomial(poly)
        if poly.degree < 1:
            raise NotMonic(f"defining polynomial must have degree >= 1, got {poly}")
        if poly.lc != 1:
            raise NotMonic(f"defining polynomial {poly} is not monic")
        self.poly = poly
        self.degree = poly.degree
        self.irreducibility = _check_irreducible(poly) if check else "assumed"
        self._mul_table = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"NumberField({self.poly.format('x')})"

    def is_rational(self) -> bool:
        return self.degree == 1 and self.poly[0] == 0

    def __call__(self, value) -> "NFElement":
        if isinstance(value, NFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction)):
            if self.degree == 1:
                # x = -f[0] in a degree-one field; constants are just constants
                return NFElement._make(self, (Fraction(value),))
            return NFElement._make(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        if isinstance(value, str):
            return self(Fraction(value))
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Iterable[Rational]) -> "NFElement":
        """Element given by a polynomial in the generator, reduced mod f."""
        poly = RatPolynomial(coeffs)
        if poly.degree >= self.degree:
            poly = divmod_poly(poly, self.poly)[1]
        vals = tuple(poly.coeffs) + (Fraction(0),) * (self.degree - len(poly.coeffs))
        return NFElement._make(self, vals)

    @property
    def gen(self) -> "NFElement":
        return self.from_coeffs([0, 1])

    @property
    def zero(self) -> "NFElement":
        return self(0)

    @property
    def one(self) -> "NFElement":
        return self(1)

    def _reduce_powers(self):
        # x^k mod f for k < 2d-1, as coefficient vectors
        if self._mul_table is None:
            d = self.degree
            table = []
            for k in range(2 * d - 1):
                r = divmod_poly(IntPolynomial.monomial(k), self.poly)[1]
                table.append(tuple(r[i] for i in range(d)))
            self._mul_table = table
        return self._mul_table


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class NFElement:
    """Element of a NumberField, stored as reduced rational coordinates."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Iterable[Rational]):
        other = field.from_coeffs(coeffs)
        self.field = field
        self.coeffs = other.coeffs

    @classmethod
    def _make(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    def __repr__(self):
        return f"NFElement({self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        return RatPolynomial(self.coeffs).format("x")

    def __eq__(self, other):
        if isinstance(other, NFElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def _other(self, other):
        if isinstance(other, NFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different number fields")
            return other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.field(other).coeffs
        return None

    def __add__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        return NFElement._make(self.field, tuple(a + b for a, b in zip(self.coeffs, oc)))

    __radd__ = __add__

    def __neg__(self):
        return NFElement._make(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        return NFElement._make(self.field, tuple(a - b for a, b in zip(self.coeffs, oc)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        d = self.field.degree
        if d == 1:
            return NFElement._make(self.field, (self.coeffs[0] * oc[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(oc):
                    if b:
                        prod[i + j] += a * b
        table = self.field._reduce_powers()
        out = [Fraction(0)] * d
        for k, c in enumerate(prod):
            if c:
                for i, t in enumerate(table[k]):
                    if t:
                        out[i] += c * t
        return NFElement._make(self.field, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "NFElement":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        # t^-1 from Cayley-Hamilton: chi(t) = 0 with chi(0) = +-norm != 0
        chi = nf_charpoly(self)
        c0 = chi[0]
        acc = self.field.zero
        for c in reversed(chi.coeffs[1:]):
            acc = acc * self + c
        return acc * (-1 / c0)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / _fr(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def denominators(self) -> list[int]:
        return [c.denominator for c in self.coeffs]

    def denominator_lcm(self) -> int:
        return functools.reduce(lambda a, b: a * b // math.gcd(a, b), self.denominators(), 1)

    def is_integral_at(self, p: int) -> bool:
        return all(c.denominator % p for c in self.coeffs)

    def is_s_integral(self, S: Iterable[int]) -> bool:
        """All coefficient denominators are supported on S."""
        S = tuple(S)
        for den in self.denominators():
            for p in S:
                while den % p == 0:
                    den //= p
            if den != 1:
                return False
        return True

    def trace(self) -> Fraction:
        chi = nf_charpoly(self)
        return -chi[self.field.degree - 1]

    def norm(self) -> Fraction:
        chi = nf_charpoly(self)
        return chi[0] * (-1) ** self.field.degree


@dataclass(frozen=True)
class Place:
    """A prime of K above p, given by a monic irreducible factor of f mod p."""

    field: NumberField
    p: int
    factor: IntPolynomial
    multiplicity: int
    residue_field: FiniteField

    @property
    def residue_degree(self) -> int:
        return self.factor.degree

    @property
    def ramified(self) -> bool:
        return self.multiplicity > 1

    def __repr__(self):
        tag = ", ramified" if self.ramified else ""
        return f"Place(p={self.p}, factor={self.factor.format('x')}, degree={self.residue_degree}{tag})"


def nf_make(f: IntPolynomial | Sequence[int]) -> NumberField:
    return NumberField(f)


def rationals() -> NumberField:
    return NumberField(IntPolynomial([0, 1]))


def nf_charpoly(t: NFElement) -> RatPolynomial:
    """det(Y - M_t) for the multiplication matrix M_t on the power basis (Faddeev-LeVerrier)."""
    K = t.field
    d = K.degree
    basis = [K.from_coeffs([0] * i + [1]) for i in range(d)]
    cols = [(t * b).coeffs for b in basis]
    mat = [[cols[j][i] for j in range(d)] for i in range(d)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d)] for i in range(d)]

    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    mk = [[Fraction(0)] * d for _ in range(d)]
    prev = Fraction(1)
    for k in range(1, d + 1):
        # M_k = A M_{k-1} + c_{d-k+1} I ; c_{d-k} = -tr(A M_k)/k
        mk = matmul(mat, mk) if k > 1 else [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            mk[i][i] += prev
        am = matmul(mat, mk)
        c = -sum(am[i][i] for i in range(d)) / k
        coeffs[d - k] = c
        prev = c
    return RatPolynomial(coeffs)


def nf_places_above(K: NumberField, p: int) -> list[Place]:
    """One place per irreducible factor of f mod p, ordered by degree then coefficients."""
    require_prime(p)
    return list(_places_cached(K, p))


@functools.lru_cache(maxsize=65536)
def _places_cached(K: NumberField, p: int) -> tuple[Place, ...]:
    out = []
    for g, mult in pm_factor(K.poly.coeffs, p):
        out.append(Place(K, p, IntPolynomial(g), mult, FiniteField(p, g)))
    return tuple(out)


def place_from_factor(K: NumberField, p: int, factor: IntPolynomial | Sequence[int]) -> Place:
    """Rebuild the place above p with the given monic factor; ValueError if it does not divide f mod p."""
    require_prime(p)
    coeffs = factor.coeffs if isinstance(factor, IntPolynomial) else tuple(factor)
    target = pm_reduce(coeffs, p)
    for place in _places_cached(K, p):
        if place.factor.coeffs == target:
            return place
    raise ValueError(f"{IntPolynomial(coeffs)} is not an irreducible factor of {K.poly} mod {p}")


def nf_reduce(t: NFElement, v: Place) -> FFElement:
    """Image of t in the residue field of v."""
    p = v.p
    if not t.is_integral_at(p):
        raise DenominatorAtPlace(f"{t} has a denominator divisible by {p}")
    ints = [c.numerator * pow(c.denominator, -1, p) % p for c in t.coeffs]
    if v.factor.degree == 1:
        # evaluate at the root of the linear factor
        r, acc = -v.factor[0] % p, 0
        for c in reversed(ints):
            acc = (acc * r + c) % p
        return FFElement._make(v.residue_field, (acc,))
    return v.residue_field.from_coeffs(ints)


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def is_rational_prime(p) -> bool:
    return isinstance(p, int) and not isinstance(p, bool) and is_prime(p)
