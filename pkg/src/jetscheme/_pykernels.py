"""Pure-Python versions of the hot kernels (same signatures as ``_ckernels``)."""


def rank_mod_p(rows, p):
    """Rank of an integer matrix modulo a prime ``p < 2**31``."""
    m = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        inv = pow(prow[col], -1, p)
        prow = [x * inv % p for x in prow]
        m[rank] = prow
        for i in range(rank + 1, len(m)):
            f = m[i][col]
            if f:
                row = m[i]
                m[i] = [(a - f * b) % p for a, b in zip(row, prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def series_mul_mod_p(a, b, n, p):
    """Coefficients 0..n of the product of two coefficient lists, modulo ``p``."""
    out = [0] * (n + 1)
    la, lb = len(a), len(b)
    for i in range(min(la, n + 1)):
        ai = a[i]
        if ai:
            for j in range(min(lb, n + 1 - i)):
                out[i + j] += ai * b[j]
    return [x % p for x in out]
