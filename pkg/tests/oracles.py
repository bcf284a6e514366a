"""Independent reference computations used to cross-check the package."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import sympy

X = sympy.Symbol("X")


def sympy_coeffs(expr) -> list[int]:
    """Low-to-high integer coefficients of a sympy polynomial in X."""
    return [int(c) for c in reversed(sympy.Poly(expr, X).all_coeffs())]


def cyclotomic_ref(n: int) -> list[int]:
    return sympy_coeffs(sympy.cyclotomic_poly(n, X))


def poly_expr(coeffs) -> sympy.Expr:
    return sum(sympy.Rational(str(Fraction(c))) * X**i for i, c in enumerate(coeffs))


def sylvester_resultant(f, g) -> Fraction:
    """Determinant of the Sylvester matrix of f and g (coefficient lists, low to high)."""
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    m, n = len(f) - 1, len(g) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(f)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(g)) + [0] * (m - 1 - i))
    mat = sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in rows])
    d = mat.det()
    return Fraction(int(d.p), int(d.q))


def sl2_all(p: int) -> np.ndarray:
    """Every matrix of SL2(F_p) as rows (a, b, c, d)."""
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                if a:
                    out.append((a, b, c, (1 + b * c) * pow(a, -1, p) % p))
                elif b and b * c % p == p - 1:
                    out.extend((a, b, c, d) for d in range(p))
    return np.array(out, dtype=np.int64)


def psl2_orders(mats: np.ndarray, p: int, limit: int | None = None) -> np.ndarray:
    """Least k with M^k = +-I, by repeated multiplication on all rows at once (0 if none <= limit)."""
    limit = p + 1 if limit is None else limit
    base = mats % p
    cur = base.copy()
    orders = np.zeros(len(mats), dtype=np.int64)
    for k in range(1, limit + 1):
        a, b, c, d = cur.T
        hit = (orders == 0) & (b == 0) & (c == 0) & (a == d) & ((a == 1) | (a == p - 1))
        orders[hit] = k
        if (orders != 0).all():
            break
        w, x, y, z = base.T
        cur = np.stack([(a * w + b * y) % p, (a * x + b * z) % p, (c * w + d * y) % p, (c * x + d * z) % p], axis=1)
    return orders


def s_unit_rational_ref(u: Fraction, S) -> bool:
    if u == 0:
        return False
    primes = set(sympy.factorint(abs(u.numerator))) | set(sympy.factorint(u.denominator))
    return primes <= set(S)


def s_integral_ref(q: Fraction, S) -> bool:
    return set(sympy.factorint(q.denominator)) <= set(S)
