"""
Prime and prime-power finite fields.

Polynomials over F_p are handled internally as tuples of ints in ``[0, p)``,
constant term first. ``FiniteField(p, f)`` is ``F_p[x]/(f)`` for a monic
irreducible ``f``; its elements are ``FFElement`` values holding a
coefficient tuple of length ``deg f``.
"""
from __future__ import annotations

import functools
import math
import os
import random
from typing import Iterator, Optional, Sequence

from .errors import (
    CompositeModulus,
    FactorBoundExceeded,
    ReducibleFactor,
    ZeroElement,
)
from .polyarith import IntPolynomial

DEFAULT_FACTOR_BOUND = 10**6
FACTOR_SEED = 20100906

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def factor_bound() -> int:
    """Trial-division cap, overridable through ``FINQ_FACTOR_BOUND``."""
    raw = os.environ.get("FINQ_FACTOR_BOUND")
    return int(raw) if raw else DEFAULT_FACTOR_BOUND


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    if n < 41 * 41:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise CompositeModulus(f"{p!r} is not prime")
    return p


@functools.lru_cache(maxsize=8)
def _sieve(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_up_to(limit: int) -> tuple[int, ...]:
    return _sieve(int(limit))


def iter_primes(limit: Optional[int] = None) -> Iterator[int]:
    """Primes in increasing order, up to ``limit`` inclusive (unbounded if None)."""
    if limit is not None:
        yield from _sieve(int(limit))
        return
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


@functools.lru_cache(maxsize=4096)
def _factor_int_cached(n: int, bound: int) -> tuple[tuple[int, int], ...]:
    out = []
    m = n
    for p in (2, 3):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    f = 5
    step = 2
    while f * f <= m and f <= bound:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            out.append((f, e))
        f += step
        step = 6 - step
    if m > 1:
        if f * f > m or is_prime(m):
            out.append((m, 1))
        else:
            raise FactorBoundExceeded(n, bound, m)
    out.sort()
    return tuple(out)


def factor_int(n: int, bound: Optional[int] = None) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as sorted ``(prime, exponent)`` pairs.

    Trial division up to ``bound``; a leftover cofactor is accepted only when
    it is provably prime, otherwise FactorBoundExceeded is raised.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    return _factor_int_cached(n, factor_bound() if bound is None else bound)


def prime_divisors(n: int, bound: Optional[int] = None) -> list[int]:
    return [p for p, _ in factor_int(n, bound)]


# polynomials over F_p -------------------------------------------------------


def _trim(a: list) -> tuple:
    end = len(a)
    while end and a[end - 1] == 0:
        end -= 1
    return tuple(a[:end])


def pm_reduce(coeffs: Sequence[int], p: int) -> tuple:
    return _trim([c % p for c in coeffs])


def pm_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def pm_sub(a, b, p):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def pm_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def pm_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero mod p")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return (), _trim(rem)
    quot = [0] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i] % p
        if c == 0:
            continue
        f = c * inv % p
        quot[i - db] = f
        for j, bc in enumerate(b):
            rem[i - db + j] = (rem[i - db + j] - f * bc) % p
    return _trim(quot), _trim([c % p for c in rem[:db]])


def pm_mod(a, b, p):
    return pm_divmod(a, b, p)[1]


def pm_monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def pm_gcd(a, b, p):
    while b:
        a, b = b, pm_mod(a, b, p)
    return pm_monic(a, p)


def pm_ext_gcd(a, b, p):
    """Return (g, s) with s*a = g mod b, g monic gcd."""
    r0, r1 = a, b
    s0, s1 = (1,), ()
    while r1:
        q, r = pm_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, pm_sub(s0, pm_mul(q, s1, p), p)
    inv = pow(r0[-1], -1, p)
    return pm_monic(r0, p), tuple(c * inv % p for c in s0)


def pm_powmod(base, e: int, mod, p):
    result = (1,)
    base = pm_mod(base, mod, p)
    while e:
        if e & 1:
            result = pm_mod(pm_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = pm_mod(pm_mul(base, base, p), mod, p)
    return result


def pm_deriv(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def pm_is_irreducible(f, p) -> bool:
    """Rabin's test for a monic f over F_p."""
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = (0, 1)
    if pm_powmod(x, p**d, f, p) != pm_mod(x, f, p):
        return False
    for r, _ in factor_int(d):
        h = pm_sub(pm_powmod(x, p ** (d // r), f, p), x, p)
        if len(pm_gcd(f, h, p)) != 1:
            return False
    return True


def _squarefree(f, p):
    """Squarefree decomposition of a monic f as [(g, multiplicity)]."""
    out = []
    c = pm_gcd(f, pm_deriv(f, p), p)
    w = pm_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = pm_gcd(w, c, p)
        fac = pm_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = pm_divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        root = tuple(c[i] for i in range(0, len(c), p))
        out.extend((g, m * p) for g, m in _squarefree(root, p))
    return out


def _distinct_degree(f, p):
    out = []
    x = (0, 1)
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = pm_powmod(h, p, f, p)
        g = pm_gcd(f, pm_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, i))
            f = pm_divmod(f, g, p)[0]
            h = pm_mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _equal_degree(f, d, p, rng):
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        g = pm_gcd(f, a, p)
        if 1 < len(g) < len(f):
            break
        if p == 2:
            t, b = a, a
            for _ in range(d - 1):
                b = pm_mod(pm_mul(b, b, p), f, p)
                t = pm_add(t, b, p)
        else:
            t = pm_sub(pm_powmod(a, (p**d - 1) // 2, f, p), (1,), p)
        g = pm_gcd(f, t, p)
        if 1 < len(g) < len(f):
            break
    return _equal_degree(g, d, p, rng) + _equal_degree(pm_divmod(f, g, p)[0], d, p, rng)


def pm_factor(f, p, seed: int = FACTOR_SEED):
    """Factor a nonzero polynomial over F_p into sorted (monic irreducible, multiplicity) pairs."""
    f = pm_reduce(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    f = pm_monic(f, p)
    rng = random.Random(seed)
    out = []
    for g, mult in _squarefree(f, p):
        for h, d in _distinct_degree(g, p):
            for irr in _equal_degree(h, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: (len(fm[0]), fm[0][::-1], fm[1]))
    return out


def ff_poly_factor(poly: IntPolynomial, p: int) -> list[tuple[IntPolynomial, int]]:
    """Complete factorization of ``poly`` mod p into monic irreducibles with multiplicities.

    The leading unit is dropped. Factors are ordered by degree, then by
    coefficients. Equal-degree splitting uses a fixed seed, so output is
    reproducible.
    """
    require_prime(p)
    reduced = pm_reduce(poly.coeffs, p)
    if not reduced:
        raise ValueError(f"{poly} vanishes mod {p}")
    return [(IntPolynomial(g), m) for g, m in pm_factor(reduced, p)]


# finite fields ----------------------------------------------------------------


class FiniteField:
    """F_q = F_p[x]/(f) for a monic irreducible f of degree d, q = p^d < 2^64."""

    __slots__ = ("p", "modulus", "degree", "q", "_hash")

    def __init__(self, p: int, factor: IntPolynomial | Sequence[int]):
        require_prime(p)
        coeffs = factor.coeffs if isinstance(factor, IntPolynomial) else tuple(factor)
        mod = pm_reduce(coeffs, p)
        if len(mod) < 2:
            raise ReducibleFactor(f"defining factor must have degree >= 1 mod {p}")
        if mod[-1] != 1:
            raise ReducibleFactor(f"defining factor {IntPolynomial(coeffs)} is not monic mod {p}")
        if not pm_is_irreducible(mod, p):
            raise ReducibleFactor(f"{IntPolynomial(coeffs)} is reducible mod {p}")
        self.p = p
        self.modulus = mod
        self.degree = len(mod) - 1
        self.q = p**self.degree
        if self.q >= 2**64:
            raise ValueError(f"field of size {p}^{self.degree} exceeds 2^64")
        self._hash = hash((p, mod))

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.p == other.p and self.modulus == other.modulus

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.degree == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {IntPolynomial(self.modulus).format('x')})"

    @property
    def factor(self) -> IntPolynomial:
        return IntPolynomial(self.modulus)

    def __call__(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FFElement._make(self, (value % self.p,) + (0,) * (self.degree - 1))
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FFElement":
        """Element represented by a polynomial in the generator, reduced mod the factor."""
        red = pm_mod(pm_reduce(coeffs, self.p), self.modulus, self.p)
        return FFElement._make(self, red + (0,) * (self.degree - len(red)))

    @property
    def zero(self) -> "FFElement":
        return self(0)

    @property
    def one(self) -> "FFElement":
        return self(1)

    @property
    def gen(self) -> "FFElement":
        return self.from_coeffs((0, 1))

    def element(self, index: int) -> "FFElement":
        """Element number ``index`` in the fixed enumeration: base-p digits, constant term first."""
        digits = []
        for _ in range(self.degree):
            index, r = divmod(index, self.p)
            digits.append(r)
        return FFElement._make(self, tuple(digits))

    def elements(self, include_zero: bool = True) -> Iterator["FFElement"]:
        for i in range(0 if include_zero else 1, self.q):
            yield self.element(i)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        p = self.p
        if self.degree == 1:
            return (a[0] * b[0] % p,)
        red = pm_mod(pm_mul(a, b, p), self.modulus, p)
        return red + (0,) * (self.degree - len(red))


class FFElement:
    """Element of a FiniteField; immutable, compared by field and coefficient tuple."""

    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs: Sequence[int]):
        other = field.from_coeffs(coeffs)
        self.field = field
        self.c = other.c

    @classmethod
    def _make(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        obj.c = coeffs
        return obj

    def index(self) -> int:
        """Position of this element in the field's fixed enumeration."""
        out = 0
        for digit in reversed(self.c):
            out = out * self.field.p + digit
        return out

    def __repr__(self):
        if self.field.degree == 1:
            return f"FFElement({self.c[0]} mod {self.field.p})"
        return f"FFElement({IntPolynomial(self.c).format('x')} in {self.field!r})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.c[0])
        return IntPolynomial(self.c).format("x")

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.c == other.c
        if isinstance(other, int):
            return self == self.field(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.c))

    def __bool__(self):
        return any(self.c)

    def is_zero(self) -> bool:
        return not any(self.c)

    def _other(self, other):
        if isinstance(other, FFElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other.c
        if isinstance(other, int):
            return self.field(other).c
        return None

    def __add__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        p = self.field.p
        return FFElement._make(self.field, tuple((x + y) % p for x, y in zip(self.c, oc)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElement._make(self.field, tuple(-x % p for x in self.c))

    def __sub__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        p = self.field.p
        return FFElement._make(self.field, tuple((x - y) % p for x, y in zip(self.c, oc)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        oc = self._other(other)
        if oc is None:
            return NotImplemented
        return FFElement._make(self.field, self.field._mul(self.c, oc))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        f = self.field
        if f.degree == 1:
            return FFElement._make(f, (pow(self.c[0], -1, f.p),))
        g, s = pm_ext_gcd(_trim(list(self.c)), f.modulus, f.p)
        return f.from_coeffs(s)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        if f.degree == 1:
            return FFElement._make(f, (pow(self.c[0], e, f.p),))
        if self.is_zero():
            return f.one if e == 0 else self
        e %= f.q - 1
        res = f.one.c
        base = self.c
        while e:
            if e & 1:
                res = f._mul(res, base)
            e >>= 1
            if e:
                base = f._mul(base, base)
        return FFElement._make(f, res)


def ff_make(p: int, factor: IntPolynomial | Sequence[int]) -> FiniteField:
    return FiniteField(p, factor)


def prime_field(p: int) -> FiniteField:
    return FiniteField(p, (0, 1))


def order_dividing(x, group_order: int, one, bound: Optional[int] = None) -> int:
    """Least k | group_order with x^k == one, by stripping prime factors.

    Works for anything supporting ``**`` with nonnegative exponents; the
    caller guarantees ``x ** group_order == one``.
    """
    k = group_order
    for r, _ in factor_int(group_order, bound):
        while k % r == 0 and x ** (k // r) == one:
            k //= r
    return k


def ff_mult_order(a: FFElement, bound: Optional[int] = None) -> int:
    """Multiplicative order of a nonzero finite-field element."""
    if a.is_zero():
        raise ZeroElement("zero has no multiplicative order")
    q = a.field.q
    one = a.field.one
    if q == 2:
        return 1
    return order_dividing(a, q - 1, one, bound)


def has_mult_order(a: FFElement, n: int) -> bool:
    if a.is_zero() or a**n != 1:
        return False
    return all(a ** (n // r) != 1 for r, _ in factor_int(n))


def ff_element_of_order(field: FiniteField, n: int) -> Optional[FFElement]:
    """Smallest element (in the field's enumeration) of multiplicative order n, or None."""
    if n < 1:
        raise ValueError("order must be positive")
    q = field.q
    if (q - 1) % n:
        return None
    if n == 1:
        return field.one
    if n <= 4096:
        # all elements of order n are the primitive powers of any one of them
        cofactor = (q - 1) // n
        for i in range(1, q):
            root = field.element(i) ** cofactor
            if has_mult_order(root, n):
                break
        members = [root**k for k in range(1, n) if math.gcd(k, n) == 1]
        return min(members, key=FFElement.index)
    for i in range(1, q):
        a = field.element(i)
        if has_mult_order(a, n):
            return a
    return None
