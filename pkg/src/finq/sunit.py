"""
Bounded enumeration of S-unit equation solutions u + v = 1, and the
exceptional trace set W = {(2u - 1) tau} built from them.

Completeness is only claimed where a shipped, independently cross-checked
solution table exists (rational S contained in {2, 3}); every other result
carries ``complete=False``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import MissingFundamentalUnit, UnsupportedTauField
from .galoisfield import is_prime, prime_divisors
from .numberfield import NFElement, NumberField, nf_make, nf_places_above, rationals
from .polyarith import IntPolynomial, modulus_bound, real_cyclotomic
from .witness import excluded_primes_for, empirical_witness_scan, from_trace

# u with u and 1 - u both S-units, for S inside {2, 3}: the anharmonic orbits of 2, 3, 4 and 9
_F = Fraction
KNOWN_RATIONAL_SOLUTIONS = {
    (): frozenset(),
    (2,): frozenset({_F(2), _F(-1), _F(1, 2)}),
    (3,): frozenset(),
    (2, 3): frozenset(
        {_F(2), _F(-1), _F(1, 2)}
        | {_F(3), _F(-2), _F(1, 3), _F(2, 3), _F(-1, 2), _F(3, 2)}
        | {_F(4), _F(-3), _F(1, 4), _F(3, 4), _F(-1, 3), _F(4, 3)}
        | {_F(9), _F(-8), _F(1, 9), _F(8, 9), _F(-1, 8), _F(9, 8)}
    ),
}

# real quadratic fields with a fundamental unit, keyed by the squarefree D
QUADRATIC_PRESETS = {
    2: ((-2, 0, 1), (1, 1)),  # Q(sqrt 2), 1 + sqrt 2
    3: ((-3, 0, 1), (2, 1)),  # Q(sqrt 3), 2 + sqrt 3
    5: ((-1, -1, 1), (0, 1)),  # Q(sqrt 5) = Q(phi), phi
}

# m -> (squarefree D of the field of tau, or None for Q); tau is the generator in the quadratic cases
TAU_FIELDS = {3: None, 4: 2, 5: 5, 6: 3}


@dataclass(frozen=True)
class SUnitSolution:
    """u = sign * prod(generator^e); exponents is None for members added by anharmonic closure."""

    u: Union[Fraction, NFElement]
    sign: int
    exponents: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class SUnitResult:
    S: tuple[int, ...]
    bound: int
    solutions: tuple[SUnitSolution, ...]
    complete: bool

    def values(self) -> list:
        return [s.u for s in self.solutions]

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def _check_S(S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(p) for p in S)))
    bad = [p for p in S if not is_prime(p)]
    if bad:
        raise ValueError(f"S must consist of primes, got {bad}")
    return S


def is_rational_s_unit(x: Fraction, S: Iterable[int]) -> bool:
    """x is nonzero with numerator and denominator supported on S."""
    if x == 0:
        return False
    x = Fraction(x)
    for part in (abs(x.numerator), x.denominator):
        for p in S:
            while part % p == 0:
                part //= p
        if part != 1:
            return False
    return True


def is_s_unit(x: NFElement, S: Iterable[int]) -> bool:
    """x and 1/x both S-integral on the power basis (valid when Z[x] is the maximal order)."""
    if not x:
        return False
    S = tuple(S)
    return x.is_s_integral(S) and x.inverse().is_s_integral(S)


def _rational_exponents(u: Fraction, S) -> tuple[int, ...]:
    out = []
    for p in S:
        e = 0
        num, den = abs(u.numerator), u.denominator
        while num % p == 0:
            num //= p
            e += 1
        while den % p == 0:
            den //= p
            e -= 1
        out.append(e)
    return tuple(out)


def _anharmonic_orbit(u):
    one = u * 0 + 1
    v = one - u
    return [u, v, one / u, one / v, (u - one) / u, u / (u - one)]


def sunit_solutions_rational(S: Iterable[int], exponent_bound: int) -> SUnitResult:
    """All u = +-prod p^e (|e| <= bound) in Q with 1 - u also an S-unit, closed under u -> 1-u, 1/u."""
    S = _check_S(S)
    if exponent_bound < 1:
        raise ValueError("exponent bound must be >= 1")
    found = set()
    ranges = [range(-exponent_bound, exponent_bound + 1)] * len(S)
    for exps in itertools.product(*ranges):
        mag = Fraction(1)
        for p, e in zip(S, exps):
            mag *= Fraction(p) ** e
        for u in (mag, -mag):
            if u != 1 and is_rational_s_unit(1 - u, S):
                found.add(u)
    for u in list(found):
        found.update(_anharmonic_orbit(u))
    sols = tuple(
        SUnitSolution(u, 1 if u > 0 else -1, _rational_exponents(u, S)) for u in sorted(found)
    )
    known = KNOWN_RATIONAL_SOLUTIONS.get(S)
    complete = known is not None and frozenset(found) == known
    return SUnitResult(S, exponent_bound, sols, complete)


def _conjugate(x: NFElement) -> NFElement:
    # x -> trace - x for the generator of a quadratic field
    K = x.field
    tr_gen = -K.poly[1]
    a, b = x.coeffs
    return K.from_coeffs([a + b * tr_gen, -b])


def _prime_elements(K: NumberField, p: int, search: int = 200) -> list[NFElement]:
    """Generators of the primes of K above p (class number one assumed)."""
    places = nf_places_above(K, p)
    if len(places) == 1 and not places[0].ramified and places[0].residue_degree == 2:
        return [K(p)]
    for h in range(1, search + 1):
        for a in range(-h, h + 1):
            for b in (h, -h) if abs(a) != h else range(-h, h + 1):
                x = K.from_coeffs([a, b])
                if x and abs(x.norm()) == p:
                    if places[0].ramified:
                        return [x]
                    return [x, _conjugate(x)]
    raise ValueError(f"no element of norm +-{p} found in {K} (height <= {search})")


def sunit_solutions_quadratic(disc_data, S: Iterable[int], exponent_bound: int) -> SUnitResult:
    """Bounded search over +-eps^a prod pi_i^e_i in a real quadratic field; never marked complete.

    ``disc_data`` is ``(defining poly, fundamental unit)`` with the unit given
    by coefficients on 1, x; or an int D in QUADRATIC_PRESETS.
    """
    if isinstance(disc_data, int):
        if disc_data not in QUADRATIC_PRESETS:
            raise MissingFundamentalUnit(f"no shipped fundamental unit for Q(sqrt {disc_data})")
        disc_data = QUADRATIC_PRESETS[disc_data]
    poly, unit = disc_data
    K = poly if isinstance(poly, NumberField) else nf_make(IntPolynomial(poly))
    if K.degree != 2:
        raise ValueError("quadratic search needs a degree-2 field")
    if unit is None:
        raise MissingFundamentalUnit(f"no fundamental unit supplied for {K}")
    eps = unit if isinstance(unit, NFElement) else K.from_coeffs(unit)
    if abs(eps.norm()) != 1 or not eps.is_s_integral(()) or eps == 1 or eps == -1:
        raise MissingFundamentalUnit(f"{eps} is not a nontrivial unit of {K}")
    S = _check_S(S)
    if exponent_bound < 1:
        raise ValueError("exponent bound must be >= 1")
    gens = [eps]
    for p in S:
        gens.extend(_prime_elements(K, p))
    powers = [
        {e: g**e for e in range(-exponent_bound, exponent_bound + 1)} for g in gens
    ]
    found: dict[NFElement, tuple] = {}
    ranges = [range(-exponent_bound, exponent_bound + 1)] * len(gens)
    for exps in itertools.product(*ranges):
        mag = K.one
        for table, e in zip(powers, exps):
            mag = mag * table[e]
        for sign in (1, -1):
            u = mag * sign
            if u != 1 and is_s_unit(K.one - u, S):
                found.setdefault(u, (sign, exps))
    for u in list(found):
        for v in _anharmonic_orbit(u):
            if v not in found:
                found[v] = (None, None)
    sols = tuple(
        SUnitSolution(u, sign, exps)
        for u, (sign, exps) in sorted(found.items(), key=lambda kv: tuple(kv[0].coeffs))
    )
    return SUnitResult(S, exponent_bound, sols, False)


# exceptional traces ------------------------------------------------------------------


NO_WITNESS = "no witness up to {bound}"
EXCLUDED_ONLY = "witness exists at excluded prime"
ALLOWED = "witness exists at allowed prime"


@dataclass(frozen=True)
class ExceptionalCandidate:
    value: NFElement
    u: Union[Fraction, NFElement]
    status: str
    first_witness_prime: Optional[int]


@dataclass(frozen=True)
class ExceptionalReport:
    m: int
    field: NumberField
    S: tuple[int, ...]
    S0_used: tuple[int, ...]
    tau_field: NumberField
    tau: Union[Fraction, NFElement]
    units: SUnitResult
    candidates: tuple[ExceptionalCandidate, ...]
    scan_bound: int

    def values(self) -> list[NFElement]:
        return [c.value for c in self.candidates]

    def integer_values(self) -> list[int]:
        return sorted(
            int(c.value.coeffs[0])
            for c in self.candidates
            if c.value.is_rational() and c.value.coeffs[0].denominator == 1
        )


def tau_field(m: int) -> tuple[NumberField, NFElement]:
    """The field Q(tau) for tau = 2cos(pi/m) and tau in it; only m in 3..6 are shipped."""
    if m not in TAU_FIELDS:
        raise UnsupportedTauField(
            f"tau = 2cos(pi/{m}) has degree {real_cyclotomic(m).degree} over Q; only m in 3..6 are supported"
        )
    D = TAU_FIELDS[m]
    if D is None:
        Q = rationals()
        return Q, Q(1)
    T = nf_make(IntPolynomial(QUADRATIC_PRESETS[D][0]))
    return T, T.gen


def exceptional_trace_candidates(
    m: int,
    K: Optional[NumberField] = None,
    S: Iterable[int] = (),
    exponent_bound: int = 20,
    scan_bound: int = 10**4,
) -> ExceptionalReport:
    """W = K intersected with {(2u - 1) tau : u in U}, each member annotated by an empirical scan."""
    K = K or rationals()
    S = _check_S(S)
    T, tau = tau_field(m)
    if not (K.is_rational() or K == T):
        raise UnsupportedTauField(f"K = {K} is neither Q nor the field of tau {T}")
    s0 = set(S) | set(prime_divisors(2 * modulus_bound(2 * m).N))
    tau_norm = tau.norm() if T.degree > 1 else Fraction(1)
    if abs(tau_norm.numerator) != 1:
        s0 |= set(prime_divisors(tau_norm.numerator))
    s0 = tuple(sorted(s0))
    if T.degree == 1:
        units = sunit_solutions_rational(s0, exponent_bound)
        w0 = [(u, T(2 * u - 1)) for u in units.values()]
    else:
        units = sunit_solutions_quadratic(QUADRATIC_PRESETS[TAU_FIELDS[m]], s0, exponent_bound)
        w0 = [(u, (u * 2 - 1) * tau) for u in units.values()]
    members: dict = {}
    for u, w in w0:
        if K == T:
            val = K.from_coeffs(w.coeffs)
        elif w.is_rational():
            val = K(w.coeffs[0])
        else:
            continue
        members.setdefault(val, u)
    excluded = set(excluded_primes_for(m, S))
    cands = []
    for val, u in sorted(members.items(), key=lambda kv: tuple(kv[0].coeffs)):
        hits = empirical_witness_scan(from_trace(val), m, scan_bound)
        allowed = [h for h in hits if h.p not in excluded and not h.place.ramified]
        if allowed:
            status, first = ALLOWED, allowed[0].p
        elif hits:
            status, first = EXCLUDED_ONLY, hits[0].p
        else:
            status, first = NO_WITNESS.format(bound=scan_bound), None
        cands.append(ExceptionalCandidate(val, u, status, first))
    return ExceptionalReport(m, K, S, s0, T, tau, units, tuple(cands), scan_bound)
