# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: modular rank and truncated series products."""

from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free


cdef int64_t _inv(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt; t = newt; newt = tmp
        tmp = r - q * newr; r = newr; newr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(rows, long long p):
    """Rank of an integer matrix modulo a prime ``p < 2**31``."""
    cdef Py_ssize_t nr = len(rows)
    if nr == 0:
        return 0
    cdef Py_ssize_t nc = len(rows[0])
    if nc == 0:
        return 0
    cdef int64_t *m = <int64_t *> malloc(nr * nc * sizeof(int64_t))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, col, piv, rank = 0
    cdef int64_t f, inv, x
    try:
        for i in range(nr):
            r = rows[i]
            for j in range(nc):
                x = r[j] % p
                m[i * nc + j] = x
        for col in range(nc):
            if rank == nr:
                break
            piv = -1
            for i in range(rank, nr):
                if m[i * nc + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(nc):
                    x = m[piv * nc + j]
                    m[piv * nc + j] = m[rank * nc + j]
                    m[rank * nc + j] = x
            inv = _inv(m[rank * nc + col], p)
            for j in range(col, nc):
                m[rank * nc + j] = m[rank * nc + j] * inv % p
            for i in range(rank + 1, nr):
                f = m[i * nc + col]
                if f != 0:
                    for j in range(col, nc):
                        x = (m[i * nc + j] - f * m[rank * nc + j]) % p
                        if x < 0:
                            x += p
                        m[i * nc + j] = x
            rank += 1
    finally:
        free(m)
    return rank


def series_mul_mod_p(a, b, Py_ssize_t n, long long p):
    """Coefficients 0..n of the product of two coefficient lists, modulo ``p``."""
    cdef Py_ssize_t la = min(len(a), n + 1), lb = min(len(b), n + 1), i, j
    cdef int64_t *ca = <int64_t *> malloc((la + 1) * sizeof(int64_t))
    cdef int64_t *cb = <int64_t *> malloc((lb + 1) * sizeof(int64_t))
    cdef int64_t *out = <int64_t *> malloc((n + 1) * sizeof(int64_t))
    cdef int64_t ai
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError()
    try:
        for i in range(la):
            ca[i] = a[i] % p
        for j in range(lb):
            cb[j] = b[j] % p
        for i in range(n + 1):
            out[i] = 0
        for i in range(la):
            ai = ca[i]
            if ai != 0:
                for j in range(min(lb, n + 1 - i)):
                    out[i + j] = (out[i + j] + ai * cb[j]) % p
        return [out[i] for i in range(n + 1)]
    finally:
        free(ca); free(cb); free(out)
