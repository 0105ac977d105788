"""Exact linear algebra over QQ and GF(p) on raw field values."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .fields import QQ, Field
from .kernels import rank_mod_p as _rank_mod_p

__all__ = ["rank", "rank_mod_p", "nullspace", "rref", "to_mod", "multimodular_rank", "PRIMES"]

# 31-bit primes, descending from 2^31
PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
    2147482591, 2147482583,
)


def to_mod(c, p):
    if type(c) is int:
        return c % p
    return c.numerator * pow(c.denominator, -1, p) % p


def rank_mod_p(rows, p):
    return _rank_mod_p(rows, p)


def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for c in r:
            if type(c) is not int:
                den = lcm(den, c.denominator)
        out.append([int(c * den) for c in r])
    return out


def _more_primes():
    yield from PRIMES
    # fall back to a slow search below the table
    n = PRIMES[-1] - 2
    from .fields import _is_prime

    while True:
        if _is_prime(n):
            yield n
        n -= 2


def multimodular_rank(rows) -> int:
    """Exact rank of an integer matrix.

    The rank modulo p never exceeds the true rank, and if the true rank r
    exceeded every modular rank seen, all primes used would divide a nonzero
    r x r minor.  So once the product of primes passes the Hadamard bound the
    largest modular rank is the rank.
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    cap = min(len(rows), ncols)
    norms = sorted((isqrt(sum(x * x for x in r)) + 1 for r in rows), reverse=True)
    bound = 1
    for v in norms[:cap]:
        bound *= v
    best = 0
    prod = 1
    for p in _more_primes():
        best = max(best, _rank_mod_p(rows, p))
        if best == cap:
            return best
        prod *= p
        if prod > bound:
            return best
    raise AssertionError("unreachable")


def rank(rows, field: Field = QQ) -> int:
    """Exact rank of a matrix of raw field values."""
    if not rows or not rows[0]:
        return 0
    if field.characteristic:
        return _rank_mod_p(rows, field.characteristic)
    return multimodular_rank(_integer_rows(rows))


def rref(rows, field: Field = QQ):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    p = field.characteristic
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.inv(m[r][col])
        if p:
            m[r] = [x * inv % p for x in m[r]]
        else:
            m[r] = [QQ.norm(Fraction(x) * inv) if x else 0 for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][col]
                if f != 0:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], prow)]
                    else:
                        m[i] = [QQ.norm(a - f * b) if b else a for a, b in zip(m[i], prow)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, field: Field = QQ, ncols=None):
    """Basis of the right kernel ``{v : M v = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[field.one if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(m[r][fcol])
        basis.append(v)
    return basis


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
