"""
2x2 determinant-one matrices over a number field or a finite field, group
words, reduction at a place, and orders in PSL2 of a finite field.

A PSL2 class is represented by any SL2 lift; two matrices are the same PSL2
element when they agree up to a global sign.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Optional

from .errors import DenominatorAtPlace, NotSIntegral, NotUnimodular, OddOrder, LemmaInapplicable, UnknownGenerator
from .galoisfield import FFElement, FiniteField, factor_int, ff_mult_order, order_dividing
from .numberfield import NumberField, Place, nf_reduce


class Mat2:
    """Immutable 2x2 matrix [[a, b], [c, d]] over a commutative ring.

    With ``sl2=True`` (the default) the determinant must equal one.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, sl2: bool = True):
        self.a, self.b, self.c, self.d = a, b, c, d
        if sl2 and self.det() != 1:
            raise NotUnimodular(f"determinant of {self} is {self.det()}, not 1")

    @classmethod
    def _make(cls, a, b, c, d):
        obj = object.__new__(cls)
        obj.a, obj.b, obj.c, obj.d = a, b, c, d
        return obj

    @classmethod
    def identity(cls, one) -> "Mat2":
        return cls._make(one, one * 0, one * 0, one)

    @property
    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __neg__(self):
        return Mat2._make(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, o: "Mat2") -> "Mat2":
        if not isinstance(o, Mat2):
            return NotImplemented
        prod = Mat2._make(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
        return prod

    def inverse(self) -> "Mat2":
        """Inverse of a determinant-one matrix (the adjugate)."""
        return Mat2._make(self.d, -self.b, -self.c, self.a)

    def __pow__(self, e: int) -> "Mat2":
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = Mat2.identity(self.a * 0 + 1)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def map(self, fn: Callable) -> "Mat2":
        return Mat2(*(fn(x) for x in self.entries))

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == 1 and self.d == 1

    def is_pm_identity(self) -> bool:
        """True when the matrix is I or -I, i.e. trivial in PSL2."""
        if self.b != 0 or self.c != 0 or self.a != self.d:
            return False
        return self.a == 1 or self.a == -1

    def psl_equal(self, other: "Mat2") -> bool:
        return self == other or self == -other


def companion(t, one=None) -> Mat2:
    """The determinant-one matrix [[t, -1], [1, 0]] of trace t."""
    one = t * 0 + 1 if one is None else one
    return Mat2(t, -one, one, one * 0)


# group presets and words -------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A group word as (generator name, nonzero exponent) pairs; empty is the identity."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for name, e in self.letters:
            if not isinstance(e, int) or e == 0:
                raise ValueError(f"exponent of {name} must be a nonzero integer")

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(name if e == 1 else f"{name}^{e}" for name, e in self.letters)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)))


_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^\(?(-?\d+)\)?)?")


def parse_word(text: str) -> Word:
    """Parse ``"a b a^-1 b^-1"`` (separators: spaces, '*' or '.'); ``"1"`` or ``""`` is empty."""
    text = text.strip()
    if text in ("", "1"):
        return Word()
    letters = []
    for tok in re.split(r"[\s*.]+", text):
        if not tok:
            continue
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"cannot parse word token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0:
            continue
        letters.append((m.group(1), e))
    return Word(tuple(letters))


@dataclass(frozen=True)
class GroupPreset:
    """Named generators of a subgroup of SL2(O_{K,S})."""

    field: NumberField
    S: tuple[int, ...]
    generators: Mapping[str, Mat2]
    label: str = ""

    def __post_init__(self):
        for name, g in self.generators.items():
            if g.det() != 1:
                raise NotUnimodular(f"generator {name} has determinant {g.det()}")
            for entry in g.entries:
                if entry.field != self.field:
                    raise ValueError(f"generator {name} is not defined over {self.field}")
                if not entry.is_s_integral(self.S):
                    raise NotSIntegral(f"generator {name} has entry {entry} with denominator outside S={list(self.S)}")


def word_eval(preset: GroupPreset, w: Word) -> Mat2:
    one = preset.field.one
    result = Mat2.identity(one)
    for name, e in w.letters:
        try:
            g = preset.generators[name]
        except KeyError:
            raise UnknownGenerator(name) from None
        result = result * (g**e)
    if result.det() != 1:
        raise NotUnimodular(f"word {w} evaluated to a matrix of determinant {result.det()}")
    return result


# reduction -------------------------------------------------------------------

_ENTRY_NAMES = ("a", "b", "c", "d")


def mat_reduce(gamma: Mat2, v: Place) -> Mat2:
    """Entrywise residue map of gamma at v; the result has determinant one."""
    out = []
    for name, x in zip(_ENTRY_NAMES, gamma.entries):
        try:
            out.append(nf_reduce(x, v))
        except DenominatorAtPlace as exc:
            raise DenominatorAtPlace(str(exc), entry=name) from None
    return Mat2(*out)


def in_reduction_kernel(gamma: Mat2, v: Place) -> bool:
    """gamma maps to the trivial element of PSL2(k_v): off-diagonal entries in the maximal ideal, diagonal = +-1."""
    red = [nf_reduce(x, v) for x in gamma.entries]
    a, b, c, d = red
    return b == 0 and c == 0 and a == d and (a == 1 or a == -1)


# orders ------------------------------------------------------------------------


def _field_of(g: Mat2) -> FiniteField:
    x = g.a
    if not isinstance(x, FFElement):
        raise TypeError("PSL2 orders are computed over finite fields")
    return x.field


class _PrimeMat:
    """A 2x2 matrix over F_p on bare ints; the fast path for prime fields."""

    __slots__ = ("e", "p")

    def __init__(self, e: tuple, p: int):
        self.e, self.p = e, p

    @classmethod
    def of(cls, g: Mat2) -> "_PrimeMat":
        return cls(tuple(x.c[0] for x in g.entries), g.a.field.p)

    def __mul__(self, o: "_PrimeMat") -> "_PrimeMat":
        a, b, c, d = self.e
        w, x, y, z = o.e
        p = self.p
        return _PrimeMat(((a * w + b * y) % p, (a * x + b * z) % p, (c * w + d * y) % p, (c * x + d * z) % p), p)

    def __pow__(self, n: int) -> "_PrimeMat":
        result, base = _PrimeMat((1, 0, 0, 1), self.p), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, o):
        return self.e == o.e

    def is_pm_identity(self) -> bool:
        a, b, c, d = self.e
        return b == 0 and c == 0 and a == d and (a == 1 or a == self.p - 1)


def _fast(g: Mat2):
    return _PrimeMat.of(g) if g.a.field.degree == 1 else g


@functools.lru_cache(maxsize=1 << 16)
def _semisimple_order(F: FiniteField, t: tuple) -> int:
    # for trace != +-2 every matrix of trace t is conjugate to the companion,
    # and its order divides q-1 (split torus) or q+1 (nonsplit torus)
    if F.degree == 1:
        g, ident = _PrimeMat((t[0], F.p - 1, 1, 0), F.p), _PrimeMat((1, 0, 0, 1), F.p)
    else:
        g, ident = companion(FFElement._make(F, t)), Mat2.identity(F.one)
    q = F.q
    n = q - 1 if g ** (q - 1) == ident else q + 1
    r = order_dividing(g, n, ident)
    return r if r % 2 else r // 2


def psl2_order(g: Mat2) -> int:
    """Least k >= 1 with g^k = +-I for g in SL2(F_q)."""
    F = _field_of(g)
    if g.det() != 1:
        raise NotUnimodular(f"{g} does not have determinant 1")
    if g.is_pm_identity():
        return 1
    t = g.trace()
    if t == 2 or t == -2:
        return F.p
    return _semisimple_order(F, t.c)


def psl2_order_bruteforce(g: Mat2, limit: Optional[int] = None) -> int:
    """Least k with g^k = +-I by repeated multiplication (at most q+1 steps)."""
    F = _field_of(g)
    if g.det() != 1:
        raise NotUnimodular(f"{g} does not have determinant 1")
    limit = F.q + 1 if limit is None else limit
    h = g
    k = 1
    while not h.is_pm_identity():
        if k >= limit:
            raise ArithmeticError(f"no power of {g} up to {limit} is +-I")
        h = h * g
        k += 1
    return k


def has_psl2_order(g: Mat2, m: int) -> bool:
    """Whether [g] has order exactly m, without computing the order in full."""
    if m < 1:
        return False
    _field_of(g)
    g = _fast(g)
    if not (g**m).is_pm_identity():
        return False
    return all(not (g ** (m // r)).is_pm_identity() for r, _ in factor_int(m))


def psl2_order_from_trace(F: FiniteField, alpha: FFElement, sign: int) -> int:
    """Order m of [g] for any g in SL2(F) of trace sign*(alpha + 1/alpha), alpha of order 2m, m > 1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if alpha.field != F:
        raise ValueError("alpha is not an element of the given field")
    r = ff_mult_order(alpha)
    if r % 2:
        raise OddOrder(f"{alpha} has odd order {r}")
    if r == 2:
        raise LemmaInapplicable(f"{alpha} = -1 gives the parabolic trace -2")
    return r // 2


def trace_of_root(alpha: FFElement, sign: int) -> FFElement:
    return (alpha + alpha.inverse()) * sign
