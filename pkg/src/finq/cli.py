"""
Command-line entry point: ``finq <command> ...``.

Exit codes: 0 success, 1 no witness found, 2 certificate rejected,
64 malformed input, 65 factoring beyond the trial-division bound.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .certio import canonical_dumps, dumps_certificate, load_preset, verify_text
from .errors import FactorBoundExceeded, FinqError
from .galoisfield import FiniteField, is_prime, prime_field
from .numberfield import NumberField, nf_make, rationals
from .polyarith import IntPolynomial, cyclotomic, modulus_bound, real_cyclotomic
from .psl2 import Mat2, psl2_order
from .sunit import exceptional_trace_candidates, sunit_solutions_rational
from .witness import DEFAULT_PRIME_CAP, certify_order_witness, from_matrix, from_trace, from_word

EXIT_OK = 0
EXIT_NO_WITNESS = 1
EXIT_REJECTED = 2
EXIT_USAGE = 64
EXIT_FACTOR_BOUND = 65

TSV_COLUMNS = ("trace", "m", "witness_prime", "level", "verified_order", "exceptional_flag")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# argument parsing helpers -----------------------------------------------------------


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(s) for s in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _primes(text: Optional[str]) -> tuple[int, ...]:
    if text is None:
        return ()
    ps = _int_list(text)
    bad = [p for p in ps if not is_prime(p)]
    if bad:
        raise UsageError(f"not prime: {bad}")
    return tuple(ps)


def _field_value(K: NumberField, text: str):
    """A field element: a rational, or generator coefficients joined by ':'."""
    try:
        return K.from_coeffs([Fraction(s) for s in text.strip().split(":")])
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot read field element {text!r}") from None


def _matrix(K: NumberField, text: str) -> Mat2:
    parts = text.split(",")
    if len(parts) != 4:
        raise UsageError("a matrix is given as four entries a,b,c,d")
    return Mat2(*(_field_value(K, s) for s in parts))


def _field(text: Optional[str]) -> NumberField:
    if text is None:
        return rationals()
    return nf_make(IntPolynomial(_int_list(text)))


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected a range A..B, got {text!r}")
    try:
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise UsageError(f"expected a range A..B, got {text!r}") from None


def _poly_str(f) -> str:
    return f.format("X")


def _read_config(path: str) -> list[str]:
    """Turn key=value lines into ``--key value`` arguments; '#' starts a comment."""
    args = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line {raw!r} is not key=value")
        key = key.strip().replace("_", "-")
        if key == "factor-bound":
            os.environ["FINQ_FACTOR_BOUND"] = value.strip()
            continue
        args += [f"--{key}", value.strip()]
    return args


# commands --------------------------------------------------------------------------


def cmd_cyclotomic(args) -> int:
    print(_poly_str(cyclotomic(args.n)))
    return EXIT_OK


def cmd_realcyc(args) -> int:
    print(_poly_str(real_cyclotomic(args.m)))
    return EXIT_OK


def cmd_bound(args) -> int:
    cb = modulus_bound(args.n)
    if args.verbose:
        for e in cb.entries:
            print(f"d={e.d} N_d={e.N_d}")
    print(cb.N)
    return EXIT_OK


def _element(args):
    K = _field(args.field)
    given = [x is not None for x in (args.trace, args.preset, args.matrix)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --trace, --preset with --word, or --matrix")
    if args.trace is not None:
        return from_trace(_field_value(K, args.trace))
    if args.matrix is not None:
        return from_matrix(_matrix(K, args.matrix))
    if args.word is None:
        raise UsageError("--preset needs --word")
    try:
        preset = load_preset(args.preset)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read preset {args.preset}: {exc}") from None
    return from_word(preset, args.word)


def cmd_witness(args) -> int:
    el = _element(args)
    S = _primes(args.S)
    res = certify_order_witness(el, args.m, S, prime_cap=args.cap)
    if not res.ok:
        if res.reason == "FactorBoundExceeded":
            print(f"error: {res.diagnostics[0]}", file=sys.stderr)
            return EXIT_FACTOR_BOUND
        print(res.summary())
        for line in res.diagnostics:
            print(f"  {line}")
        return EXIT_NO_WITNESS
    text = dumps_certificate(res)
    if args.emit:
        Path(args.emit).write_text(text)
        print(res.summary())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    verdict = verify_text(text)
    print(verdict)
    return EXIT_OK if verdict else EXIT_REJECTED


def _scan_row(job) -> tuple:
    t, m, cap = job
    res = certify_order_witness(from_trace(t), m, (), prime_cap=cap)
    if not res.ok:
        return (t, m, "", "", "", 1)
    F = FiniteField(res.p, IntPolynomial(res.factor))
    g = Mat2(*(F.from_coeffs(e) for e in res.reduced))
    return (t, m, res.p, res.level, psl2_order(g), 0)


def cmd_scan(args) -> int:
    jobs = [(t, args.m, args.prime_bound) for t in _range(args.trace_range)]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as pool:
            rows = list(pool.map(_scan_row, jobs, chunksize=8))
    else:
        rows = [_scan_row(j) for j in jobs]
    rows.sort(key=lambda r: (r[1], r[0]))
    lines = ["\t".join(TSV_COLUMNS)] + ["\t".join(str(x) for x in r) for r in rows]
    out = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _value_str(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if x.field.degree == 1:
        return str(x.coeffs[0])
    return ":".join(str(c) for c in x.coeffs)


def cmd_exceptional(args) -> int:
    K = _field(args.field)
    rep = exceptional_trace_candidates(
        args.m, K, _primes(args.S), exponent_bound=args.bound, scan_bound=args.scan_bound
    )
    doc = {
        "m": rep.m,
        "field": [str(c) for c in rep.field.poly.coeffs],
        "S": list(rep.S),
        "S0_used": list(rep.S0_used),
        "tau_field": [str(c) for c in rep.tau_field.poly.coeffs],
        "units_complete": rep.units.complete,
        "exponent_bound": rep.units.bound,
        "scan_bound": rep.scan_bound,
        "candidates": [
            {
                "value": _value_str(c.value),
                "u": _value_str(c.u),
                "status": c.status,
                "first_witness_prime": c.first_witness_prime,
            }
            for c in rep.candidates
        ],
    }
    sys.stdout.write(canonical_dumps(doc))
    return EXIT_OK


def cmd_sunit(args) -> int:
    res = sunit_solutions_rational(_primes(args.primes), args.bound)
    print(" ".join(str(u) for u in sorted(res.values())) or "(none)")
    print(f"complete={'true' if res.complete else 'false'}")
    return EXIT_OK


def cmd_order(args) -> int:
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    F: FiniteField = prime_field(args.p)
    if args.factor is not None:
        F = FiniteField(args.p, IntPolynomial(_int_list(args.factor)))
    parts = args.matrix.split(",")
    if len(parts) != 4:
        raise UsageError("a matrix is given as four entries a,b,c,d")
    entries = [F.from_coeffs(_int_list(s.replace(":", ","))) for s in parts]
    print(psl2_order(Mat2(*entries)))
    return EXIT_OK


# parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="finq", description="Finite-quotient order witnesses for SL2 elements.")
    p.add_argument("--config", help="file of key=value lines, same keys as the flags")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("cyclotomic", help="print the n-th cyclotomic polynomial")
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_cyclotomic)

    s = sub.add_parser("realcyc", help="print the minimal polynomial of 2cos(pi/m)")
    s.add_argument("m", type=int)
    s.set_defaults(fn=cmd_realcyc)

    s = sub.add_parser("bound", help="print the Bezout modulus N(n)")
    s.add_argument("n", type=int)
    s.add_argument("--verbose", "-v", action="store_true", help="also list each N_d")
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("witness", help="search for and emit an order certificate")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--trace", help="trace of the element (rational, or coefficients joined by ':')")
    s.add_argument("--preset", help="preset file or shipped name (sl2z, figure8)")
    s.add_argument("--word", help="word in the preset generators, e.g. 'a b a^-1 b^-1'")
    s.add_argument("--matrix", help="entries a,b,c,d")
    s.add_argument("--field", help="defining polynomial coefficients c0,c1,...,1 (default Q)")
    s.add_argument("--S", help="comma-separated primes")
    s.add_argument("--cap", type=int, default=DEFAULT_PRIME_CAP, help="largest prime tried")
    s.add_argument("--emit", help="write the certificate here instead of stdout")
    s.set_defaults(fn=cmd_witness)

    s = sub.add_parser("verify", help="verify a certificate file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("scan", help="certify a range of rational integer traces, write TSV")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--trace-range", required=True, help="A..B, inclusive")
    s.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_CAP)
    s.add_argument("--out")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(fn=cmd_scan)

    s = sub.add_parser("exceptional", help="exceptional trace candidates as JSON")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--S")
    s.add_argument("--field", help="defining polynomial of K (default Q)")
    s.add_argument("--bound", type=int, default=20, help="S-unit exponent bound")
    s.add_argument("--scan-bound", type=int, default=10**4)
    s.set_defaults(fn=cmd_exceptional)

    s = sub.add_parser("sunit", help="rational S-unit equation solutions")
    s.add_argument("--primes", required=True)
    s.add_argument("--bound", type=int, required=True)
    s.set_defaults(fn=cmd_sunit)

    s = sub.add_parser("order", help="PSL2 order of a matrix over a finite field")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--factor", help="irreducible modulus coefficients c0,c1,...,1")
    s.add_argument("--matrix", required=True, help="entries a,b,c,d; extension elements joined by ':'")
    s.set_defaults(fn=cmd_order)
    return p


def _expand_config(argv: list[str]) -> list[str]:
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise UsageError("--config needs a file")
    rest = argv[:i] + argv[i + 2 :]
    try:
        extra = _read_config(argv[i + 1])
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    # flags given on the command line win over the config file
    for key, value in zip(extra[::2], extra[1::2]):
        if key not in rest:
            rest += [key, value]
    return rest


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_expand_config(argv))
        return args.fn(args)
    except UsageError as exc:
        print(f"finq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FactorBoundExceeded as exc:
        print(f"finq: error: {exc}", file=sys.stderr)
        return EXIT_FACTOR_BOUND
    except (FinqError, ValueError, KeyError) as exc:
        print(f"finq: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
