"""
Canonical JSON for order certificates and group presets.

Certificates are written with sorted keys and compact separators, every
integer as a decimal string and every rational as ``"a"`` or ``"a/b"``; a
sha256 digest of the remaining content is stored under ``"digest"``. Parsing
is strict, so a file that parses re-serializes to the same bytes.
"""
from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Union

from .errors import CertificateFormatError, FinqError
from .numberfield import NumberField, nf_make
from .polyarith import IntPolynomial
from .psl2 import GroupPreset, Mat2, companion, parse_word
from .witness import (
    CERTIFICATE_VERSION,
    Alpha,
    Element,
    OrderCertificate,
    Verdict,
    from_word,
    verify_certificate,
)

_INT = re.compile(r"-?(0|[1-9][0-9]*)")
_RAT = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?")

PRESET_NAMES = ("sl2z", "figure8")


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def _digest(body: dict) -> str:
    return hashlib.sha256(canonical_dumps(body).encode("ascii")).hexdigest()


# encoding ----------------------------------------------------------------------------


def _int(n: int) -> str:
    return str(int(n))


def _rat(x: Fraction) -> str:
    return str(Fraction(x))


def _nf(x) -> list[str]:
    return [_rat(c) for c in x.coeffs]


def _mat_nf(g: Mat2) -> list[list[str]]:
    return [_nf(x) for x in g.entries]


def _element_to_json(el: Element) -> dict:
    if el.kind == "trace":
        return {"kind": "trace", "trace": _nf(el.trace)}
    if el.kind == "matrix":
        return {"kind": "matrix", "entries": _mat_nf(el.matrix)}
    preset = el.preset
    return {
        "kind": "word",
        "word": str(el.word),
        "preset": {
            "label": preset.label,
            "generators": {name: _mat_nf(g) for name, g in preset.generators.items()},
        },
    }


def certificate_to_json(c: OrderCertificate) -> dict:
    alpha = None
    if c.alpha is not None:
        alpha = {
            "minpoly": [[_int(v) for v in coeffs] for coeffs in c.alpha.minpoly],
            "split": c.alpha.split,
            "value": None if c.alpha.value is None else [_int(v) for v in c.alpha.value],
        }
    body = {
        "version": CERTIFICATE_VERSION,
        "field": {"poly": [_int(v) for v in c.field_poly], "irreducibility": c.irreducibility},
        "S": [_int(v) for v in c.S],
        "element": _element_to_json(c.element),
        "m": _int(c.m),
        "n": _int(c.n),
        "N": _int(c.N),
        "p": _int(c.p),
        "place": {
            "factor": [_int(v) for v in c.factor],
            "residue_degree": _int(c.residue_degree),
            "ramified": c.ramified,
        },
        "epsilon": None if c.epsilon is None else _int(c.epsilon),
        "alpha": alpha,
        "reduced_matrix": [[_int(v) for v in entry] for entry in c.reduced],
        "claimed_order": _int(c.claimed_order),
        "level": c.level,
        "excluded_primes": [_int(v) for v in c.excluded_primes],
        "trace_generic": c.trace_generic,
    }
    body["digest"] = _digest(body)
    return body


def dumps_certificate(c: OrderCertificate) -> str:
    return canonical_dumps(certificate_to_json(c))


# decoding ----------------------------------------------------------------------------


def _fail(msg: str):
    raise CertificateFormatError(msg)


def _get(d: dict, key: str, kind=None):
    if not isinstance(d, dict) or key not in d:
        _fail(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        _fail(f"field {key!r} has the wrong type")
    return v


def _keys(d: dict, expected: set, where: str):
    if not isinstance(d, dict) or set(d) != expected:
        _fail(f"{where}: expected keys {sorted(expected)}")


def _pint(s) -> int:
    if not isinstance(s, str) or not _INT.fullmatch(s):
        _fail(f"expected a decimal integer string, got {s!r}")
    return int(s)


def _prat(s) -> Fraction:
    if not isinstance(s, str) or not _RAT.fullmatch(s):
        _fail(f"expected a rational string, got {s!r}")
    x = Fraction(s)
    if str(x) != s:
        _fail(f"rational {s!r} is not in lowest terms")
    return x


def _pints(v) -> tuple[int, ...]:
    if not isinstance(v, list):
        _fail("expected a list of integers")
    return tuple(_pint(s) for s in v)


def _pnf(K: NumberField, v):
    if not isinstance(v, list) or len(v) != K.degree:
        _fail(f"field element must have {K.degree} coefficients")
    return K.from_coeffs([_prat(s) for s in v])


def _pmat(K: NumberField, v) -> Mat2:
    if not isinstance(v, list) or len(v) != 4:
        _fail("matrix must have four entries")
    return Mat2(*(_pnf(K, e) for e in v))


def _element_from_json(K: NumberField, S, d) -> Element:
    kind = _get(d, "kind", str)
    if kind == "trace":
        _keys(d, {"kind", "trace"}, "element")
        return Element("trace", K, companion(_pnf(K, d["trace"])))
    if kind == "matrix":
        _keys(d, {"kind", "entries"}, "element")
        return Element("matrix", K, _pmat(K, d["entries"]))
    if kind == "word":
        _keys(d, {"kind", "word", "preset"}, "element")
        pd = d["preset"]
        _keys(pd, {"label", "generators"}, "preset")
        gens = _get(pd, "generators", dict)
        preset = GroupPreset(
            K, tuple(S), {name: _pmat(K, m) for name, m in gens.items()}, _get(pd, "label", str)
        )
        word = parse_word(_get(d, "word", str))
        if str(word) != d["word"]:
            _fail("word is not in canonical form")
        return from_word(preset, word)
    _fail(f"unknown element kind {kind!r}")


_TOP_KEYS = {
    "version", "field", "S", "element", "m", "n", "N", "p", "place", "epsilon", "alpha",
    "reduced_matrix", "claimed_order", "level", "excluded_primes", "trace_generic", "digest",
}


def certificate_from_json(d: dict) -> OrderCertificate:
    _keys(d, _TOP_KEYS, "certificate")
    if d["version"] != CERTIFICATE_VERSION or isinstance(d["version"], bool):
        _fail(f"unsupported version {d['version']!r}")
    body = {k: v for k, v in d.items() if k != "digest"}
    if d["digest"] != _digest(body):
        _fail("digest mismatch: certificate content was altered")
    fd = d["field"]
    _keys(fd, {"poly", "irreducibility"}, "field")
    poly = _pints(fd["poly"])
    try:
        K = nf_make(IntPolynomial(poly))
    except FinqError as exc:
        _fail(f"invalid field: {exc}")
    S = _pints(d["S"])
    element = _element_from_json(K, S, _get(d, "element", dict))
    place = d["place"]
    _keys(place, {"factor", "residue_degree", "ramified"}, "place")
    if not isinstance(place["ramified"], bool) or not isinstance(d["trace_generic"], bool):
        _fail("boolean flags must be JSON booleans")
    alpha = None
    if d["alpha"] is not None:
        ad = d["alpha"]
        _keys(ad, {"minpoly", "split", "value"}, "alpha")
        if not isinstance(ad["split"], bool) or not isinstance(ad["minpoly"], list) or len(ad["minpoly"]) != 3:
            _fail("malformed alpha")
        alpha = Alpha(
            tuple(_pints(c) for c in ad["minpoly"]),
            ad["split"],
            None if ad["value"] is None else _pints(ad["value"]),
        )
    reduced = d["reduced_matrix"]
    if not isinstance(reduced, list) or len(reduced) != 4:
        _fail("reduced matrix must have four entries")
    level = _get(d, "level", str)
    return OrderCertificate(
        field_poly=poly,
        irreducibility=_get(fd, "irreducibility", str),
        S=S,
        element=element,
        m=_pint(d["m"]),
        n=_pint(d["n"]),
        N=_pint(d["N"]),
        p=_pint(d["p"]),
        factor=_pints(place["factor"]),
        residue_degree=_pint(place["residue_degree"]),
        ramified=place["ramified"],
        epsilon=None if d["epsilon"] is None else _pint(d["epsilon"]),
        alpha=alpha,
        reduced=tuple(_pints(e) for e in reduced),
        claimed_order=_pint(d["claimed_order"]),
        level=level,
        excluded_primes=_pints(d["excluded_primes"]),
        trace_generic=d["trace_generic"],
    )


def loads_certificate(text: str) -> OrderCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        _fail(f"not JSON: {exc}")
    try:
        return certificate_from_json(data)
    except CertificateFormatError:
        raise
    except (FinqError, ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        _fail(f"{type(exc).__name__}: {exc}")


def verify_text(text: str) -> Verdict:
    """Parse, check the digest and canonical form, then verify the mathematics."""
    try:
        cert = loads_certificate(text)
    except CertificateFormatError as exc:
        return Verdict(False, f"malformed: {exc}")
    if dumps_certificate(cert) != text:
        return Verdict(False, "malformed: not in canonical serialization")
    return verify_certificate(cert)


# presets ---------------------------------------------------------------------------


def preset_from_json(d: dict) -> GroupPreset:
    try:
        K = nf_make(IntPolynomial([int(c) for c in d["field"]["poly"]]))
        S = tuple(int(p) for p in d.get("S", []))
        gens = {}
        for name, entries in d["generators"].items():
            if len(entries) != 4:
                raise ValueError(f"generator {name} needs four entries")
            vals = []
            for e in entries:
                coeffs = e if isinstance(e, list) else [e]
                vals.append(K.from_coeffs([Fraction(str(c)) for c in coeffs]))
            gens[name] = Mat2(*vals)
        return GroupPreset(K, S, gens, str(d.get("label", "")))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed preset: {exc}") from None


def load_preset(source: Union[str, Path]) -> GroupPreset:
    """Load a preset from a JSON file, or one of the shipped presets by name."""
    if isinstance(source, str) and source in PRESET_NAMES:
        text = resources.files("finq").joinpath("presets", f"{source}.json").read_text()
    else:
        text = Path(source).read_text()
    return preset_from_json(json.loads(text))
