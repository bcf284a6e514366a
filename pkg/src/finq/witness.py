"""
Order witnesses: a place p of K at which an element of SL2(O_{K,S}) maps to
an element of exact order m in PSL2(k_p).

Candidate primes come from the resultants of the characteristic polynomial of
the trace t (and of -t) with the minimal polynomial of tau = 2cos(pi/m). Every
witness is confirmed by a direct order computation in the residue field, and
``verify_certificate`` rechecks a certificate from its own data only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import (
    DenominatorAtPlace,
    FactorBoundExceeded,
    FinqError,
    NotSIntegral,
)
from .galoisfield import (
    FFElement,
    FiniteField,
    factor_int,
    ff_element_of_order,
    ff_mult_order,
    is_prime,
    iter_primes,
    prime_divisors,
    pm_reduce,
)
from .numberfield import (
    NFElement,
    NumberField,
    Place,
    nf_charpoly,
    nf_make,
    nf_places_above,
    place_from_factor,
    rationals,
)
from .polyarith import IntPolynomial, modulus_bound, real_cyclotomic, resultant
from .psl2 import (
    GroupPreset,
    Mat2,
    Word,
    companion,
    has_psl2_order,
    mat_reduce,
    parse_word,
    psl2_order,
    psl2_order_bruteforce,
    word_eval,
)

PAPER_CERTIFIED = "paper-certified"
VERIFIED = "verified"
DEFAULT_PRIME_CAP = 10**5
CERTIFICATE_VERSION = 1


class _AllPrimes:
    """Sentinel: t is globally conjugate to +-tau, so every prime is a candidate."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ALL_PRIMES"

    def __bool__(self):
        return True


ALL_PRIMES = _AllPrimes()


# the element under study -------------------------------------------------------


@dataclass(frozen=True)
class Element:
    """An element of SL2(K) given as a matrix, as a word in a preset, or by its trace alone.

    For a bare trace the companion matrix [[t, -1], [1, 0]] stands in for it.
    """

    kind: str
    field: NumberField
    matrix: Mat2
    word: Optional[Word] = None
    preset: Optional[GroupPreset] = None

    @property
    def trace(self) -> NFElement:
        return self.matrix.trace()

    def describe(self) -> str:
        if self.kind == "trace":
            return f"trace {self.trace}"
        if self.kind == "word":
            return f"word {self.word} in {self.preset.label or 'preset'}"
        return f"matrix {self.matrix}"


def from_trace(t, K: Optional[NumberField] = None) -> Element:
    if isinstance(t, NFElement):
        K = t.field
    else:
        K = K or rationals()
        t = K(t)
    return Element("trace", K, companion(t))


def from_matrix(g: Mat2) -> Element:
    return Element("matrix", g.a.field, g)


def from_word(preset: GroupPreset, w: Union[Word, str]) -> Element:
    if isinstance(w, str):
        w = parse_word(w)
    return Element("word", preset.field, word_eval(preset, w), w, preset)


def as_element(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Mat2):
        return from_matrix(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], GroupPreset):
        return from_word(*x)
    if isinstance(x, (int, Fraction, NFElement)):
        return from_trace(x)
    raise TypeError(f"cannot interpret {x!r} as an element of SL2")


# candidate primes ---------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    p: int
    signs: tuple[int, ...]


def _check_m(m: int, minimum: int = 3) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < minimum:
        raise ValueError(f"m must be an integer >= {minimum}, got {m!r}")


def _check_S(S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(p) for p in S)))
    for p in S:
        if not is_prime(p):
            raise ValueError(f"S must consist of primes; {p} is not prime")
    return S


def trace_resultants(t: NFElement, m: int) -> tuple[Fraction, Fraction]:
    """(Res(chi_t, psi_2m), Res(chi_-t, psi_2m)) as rationals."""
    psi = real_cyclotomic(m)
    plus = resultant(nf_charpoly(t), psi.to_rational())
    minus = resultant(nf_charpoly(-t), psi.to_rational())
    return Fraction(plus), Fraction(minus)


def candidate_primes(t: NFElement, m: int, S: Iterable[int] = (), limit: Optional[int] = None):
    """Primes at which t can reduce to +-tau, each with the signs that allow it.

    Returns ALL_PRIMES when either resultant vanishes. Primes in S are left
    out; so are primes dividing only a denominator of the resultant, since t
    does not reduce there.
    """
    _check_m(m)
    S = set(_check_S(S))
    if not isinstance(t, NFElement):
        t = rationals()(t)
    plus, minus = trace_resultants(t, m)
    if plus == 0 or minus == 0:
        return ALL_PRIMES
    signs: dict[int, list[int]] = {}
    for eps, r in ((1, plus), (-1, minus)):
        if abs(r.numerator) == 1:
            continue
        for p in prime_divisors(r.numerator):
            signs.setdefault(p, []).append(eps)
    out = [Candidate(p, tuple(signs[p])) for p in sorted(signs) if p not in S]
    return out[:limit] if limit is not None else out


# certificates ----------------------------------------------------------------------


@dataclass(frozen=True)
class Alpha:
    """A root of unity of order 2m behind the witness.

    ``minpoly`` is Y^2 - s Y + 1 over the residue field, s = epsilon * trace.
    alpha is a root of it: an element of k_p itself when ``split`` (then
    ``value`` holds it), otherwise the class of Y in k_p[Y]/(minpoly).
    """

    minpoly: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    split: bool
    value: Optional[tuple[int, ...]] = None


@dataclass(frozen=True)
class OrderCertificate:
    field_poly: tuple[int, ...]
    irreducibility: str
    S: tuple[int, ...]
    element: Element
    m: int
    n: int
    N: int
    p: int
    factor: tuple[int, ...]
    residue_degree: int
    ramified: bool
    epsilon: Optional[int]
    alpha: Optional[Alpha]
    reduced: tuple[tuple[int, ...], ...]
    claimed_order: int
    level: str
    excluded_primes: tuple[int, ...]
    trace_generic: bool

    ok = True

    def summary(self) -> str:
        return (
            f"m={self.m} witnessed at p={self.p} (factor {IntPolynomial(self.factor).format('x')}, "
            f"degree {self.residue_degree}), level {self.level}"
        )


@dataclass(frozen=True)
class WitnessFailure:
    reason: str  # Exceptional | AllCandidatesRejected | DegenerateElement | FactorBoundExceeded
    diagnostics: tuple[str, ...] = ()

    ok = False

    def summary(self) -> str:
        return f"no witness: {self.reason}" + (f" ({len(self.diagnostics)} rejections)" if self.diagnostics else "")


def excluded_primes_for(m: int, S: Iterable[int]) -> tuple[int, ...]:
    big_n = modulus_bound(2 * m).N
    return tuple(sorted(set(prime_divisors(2 * big_n)) | set(S)))


def _root_order_is(s: FFElement, n: int) -> bool:
    # the companion of Y^2 - sY + 1 multiplies like Y in k[Y]/(Y^2 - sY + 1)
    c = companion(s)
    if not (c**n).is_identity():
        return False
    return all(not (c ** (n // r)).is_identity() for r, _ in factor_int(n))


def _find_alpha(trace: FFElement, m: int) -> tuple[Optional[int], Optional[Alpha]]:
    F = trace.field
    n = 2 * m
    for eps in (1, -1):
        s = trace * eps
        if not _root_order_is(s, n):
            continue
        minpoly = (F.one.c, (-s).c, F.one.c)
        split = (F.q - 1) % n == 0
        value = None
        if split:
            value = _canonical_root(F, s, n).c
        return eps, Alpha(minpoly, split, value)
    return None, None


def _canonical_root(F: FiniteField, s: FFElement, n: int) -> FFElement:
    base = ff_element_of_order(F, n)
    roots = [base**j for j in range(1, n) if math.gcd(j, n) == 1]
    roots = [r for r in roots if r + r.inverse() == s]
    return min(roots, key=FFElement.index)


def _build_certificate(el: Element, m: int, S, place: Place, g: Mat2, level: str, excluded) -> OrderCertificate:
    K = el.field
    trace = g.trace()
    eps, alpha = _find_alpha(trace, m)
    return OrderCertificate(
        field_poly=K.poly.coeffs,
        irreducibility=K.irreducibility,
        S=tuple(S),
        element=el,
        m=m,
        n=2 * m,
        N=modulus_bound(2 * m).N,
        p=place.p,
        factor=place.factor.coeffs,
        residue_degree=place.residue_degree,
        ramified=place.ramified,
        epsilon=eps,
        alpha=alpha,
        reduced=tuple(x.c for x in g.entries),
        claimed_order=m,
        level=level,
        excluded_primes=tuple(excluded),
        trace_generic=not (trace == 2 or trace == -2),
    )


def _require_s_integral(el: Element, S) -> None:
    for x in el.matrix.entries:
        if not x.is_s_integral(S):
            raise NotSIntegral(f"entry {x} of {el.describe()} is not S-integral for S={list(S)}")


def certify_order_witness(
    element,
    m: int,
    S: Iterable[int] = (),
    prime_cap: int = DEFAULT_PRIME_CAP,
    include_ramified: bool = False,
) -> Union[OrderCertificate, WitnessFailure]:
    """Find a place outside S where the element has PSL2 order exactly m.

    Candidate primes are tried in increasing order up to ``prime_cap``. A
    witness at a prime outside 2N(2m) and S, at an unramified place, is
    returned as soon as found (level paper-certified); otherwise the first
    witness at an excluded prime is returned with level verified.
    """
    _check_m(m)
    S = _check_S(S)
    el = as_element(element)
    _require_s_integral(el, S)
    if el.matrix.is_pm_identity():
        return WitnessFailure("DegenerateElement", (f"{el.describe()} is +-I",))
    excluded = excluded_primes_for(m, S)
    excluded_set = set(excluded)
    try:
        cands = candidate_primes(el.trace, m, S)
    except FactorBoundExceeded as exc:
        return WitnessFailure("FactorBoundExceeded", (str(exc),))
    if cands is ALL_PRIMES:
        primes: Iterable[int] = (p for p in iter_primes(prime_cap) if p not in S)
    elif not cands:
        return WitnessFailure("Exceptional", (f"no prime divides the trace resultants of {el.describe()}",))
    else:
        primes = [c.p for c in cands]
    log = []
    fallback = None
    for p in primes:
        if p > prime_cap:
            log.append(f"p={p}: beyond prime cap {prime_cap}")
            continue
        try:
            places = nf_places_above(el.field, p)
        except FactorBoundExceeded as exc:
            return WitnessFailure("FactorBoundExceeded", (str(exc),))
        for place in places:
            tag = f"p={p} factor {place.factor.format('x')}"
            if place.ramified and not include_ramified:
                log.append(f"{tag}: ramified, skipped")
                continue
            try:
                g = mat_reduce(el.matrix, place)
            except DenominatorAtPlace as exc:
                log.append(f"{tag}: does not reduce ({exc})")
                continue
            try:
                order = psl2_order(g)
            except FactorBoundExceeded as exc:
                return WitnessFailure("FactorBoundExceeded", (str(exc),))
            if order != m:
                log.append(f"{tag}: PSL2 order {order}")
                continue
            certified = p not in excluded_set and not place.ramified
            level = PAPER_CERTIFIED if certified else VERIFIED
            if certified:
                return _build_certificate(el, m, S, place, g, level, excluded)
            log.append(f"{tag}: order {m} but p is excluded")
            if fallback is None:
                fallback = _build_certificate(el, m, S, place, g, level, excluded)
    if fallback is not None:
        return fallback
    if not log:
        log.append(f"no candidate prime up to {prime_cap}")
    return WitnessFailure("AllCandidatesRejected", tuple(log))


# verification ---------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: Optional[str] = None
    order: Optional[int] = None

    def __bool__(self):
        return self.accepted

    def __str__(self):
        return "accept" if self.accepted else f"reject({self.reason})"


def _reject(reason: str) -> Verdict:
    return Verdict(False, reason)


def rebuild_matrix(el: Element) -> Mat2:
    """Recompute the SL2 matrix of an element from its defining data."""
    if el.kind == "trace":
        return companion(el.matrix.trace())
    if el.kind == "word":
        return word_eval(el.preset, el.word)
    return el.matrix


def verify_certificate(c: OrderCertificate) -> Verdict:
    """Recheck every claim of a certificate from its own data.

    The order is recomputed by repeated multiplication, not by the eigenvalue
    shortcut used during the search.
    """
    try:
        return _verify(c)
    except FinqError as exc:
        return _reject(f"{type(exc).__name__}: {exc}")
    except (ValueError, ArithmeticError, TypeError) as exc:
        return _reject(f"invalid data: {exc}")


def _verify(c: OrderCertificate) -> Verdict:
    K = nf_make(c.field_poly)
    if K.irreducibility != c.irreducibility:
        return _reject("irreducibility marker mismatch")
    if c.element.field != K:
        return _reject("element is not over the certificate's field")
    if list(c.S) != sorted(set(c.S)) or not all(is_prime(q) for q in c.S):
        return _reject("S is not a sorted list of primes")
    if c.m < 3:
        return _reject("m must exceed 2")
    if c.n != 2 * c.m:
        return _reject("n != 2m")
    if c.N != modulus_bound(c.n).N:
        return _reject("N does not equal N(2m)")
    if tuple(c.excluded_primes) != excluded_primes_for(c.m, c.S):
        return _reject("excluded prime set mismatch")
    if not is_prime(c.p):
        return _reject("p is not prime")
    if c.p in c.S:
        return _reject("p lies in S")
    gamma = rebuild_matrix(c.element)
    if gamma != c.element.matrix:
        return _reject("element matrix does not match its defining data")
    if gamma.det() != 1:
        return _reject("element is not in SL2")
    for x in gamma.entries:
        if not x.is_s_integral(c.S):
            return _reject("element is not S-integral")
    if pm_reduce(c.factor, c.p) != tuple(c.factor):
        return _reject("factor coefficients not reduced mod p")
    try:
        place = place_from_factor(K, c.p, c.factor)
    except ValueError:
        return _reject("candidate/reduction mismatch: factor does not give a place above p")
    if place.residue_degree != c.residue_degree:
        return _reject("residue degree mismatch")
    if place.ramified != c.ramified:
        return _reject("ramification flag mismatch")
    try:
        g = mat_reduce(gamma, place)
    except DenominatorAtPlace:
        return _reject("element does not reduce at the place")
    if tuple(x.c for x in g.entries) != tuple(tuple(r) for r in c.reduced):
        return _reject("candidate/reduction mismatch: reduced matrix differs")
    order = psl2_order_bruteforce(g)
    if order != c.claimed_order:
        return _reject(f"order mismatch: direct powering gives {order}, claimed {c.claimed_order}")
    if c.claimed_order != c.m:
        return _reject("claimed order differs from m")
    trace = g.trace()
    if c.trace_generic != (not (trace == 2 or trace == -2)):
        return _reject("trace_generic flag mismatch")
    eps, alpha = _find_alpha(trace, c.m)
    if c.epsilon != eps:
        return _reject("epsilon mismatch")
    if c.alpha != alpha:
        return _reject("alpha mismatch")
    if alpha is not None and alpha.split:
        F = place.residue_field
        a = F.from_coeffs(alpha.value)
        if ff_mult_order(a) != c.n or a + a.inverse() != trace * eps:
            return _reject("alpha is not a root of unity of order 2m with the right trace")
    certified = c.p not in c.excluded_primes and not c.ramified
    if certified:
        psi = real_cyclotomic(c.m)
        if eps is None or psi(trace * eps) != 0:
            return _reject("lemma path broken: epsilon*trace is not a root of psi")
    expected = PAPER_CERTIFIED if certified else VERIFIED
    if c.level != expected:
        return _reject(f"level claim mismatch: expected {expected}")
    return Verdict(True, None, order)


# empirical scans --------------------------------------------------------------------


@dataclass(frozen=True)
class ScanHit:
    p: int
    place: Place
    order: int


def _reducing_places(el: Element, prime_bound: int):
    for p in iter_primes(prime_bound):
        for place in nf_places_above(el.field, p):
            try:
                yield place, mat_reduce(el.matrix, place)
            except DenominatorAtPlace:
                continue


def empirical_witness_scan(element, m: int, prime_bound: int, first_only: bool = False) -> list[ScanHit]:
    """Every place above a prime <= prime_bound where the element reduces to order exactly m."""
    _check_m(m, 1)
    el = as_element(element)
    hits = []
    for place, g in _reducing_places(el, prime_bound):
        if has_psl2_order(g, m):
            hits.append(ScanHit(place.p, place, m))
            if first_only:
                break
    return hits


def finitistic_profile(element, m_range: Iterable[int], prime_bound: int) -> list[tuple[int, Optional[int]]]:
    """For each m, the first prime <= prime_bound with a place where the element has order m."""
    el = as_element(element)
    wanted = sorted(set(m_range))
    first: dict[int, int] = {}
    for place, g in _reducing_places(el, prime_bound):
        order = psl2_order(g)
        if order in wanted and order not in first:
            first[order] = place.p
            if len(first) == len(wanted):
                break
    return [(m, first.get(m)) for m in wanted]
