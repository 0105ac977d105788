import random

import pytest
import sympy

from jetscheme import GF, QQ, _pykernels, kernels, linalg


def _rand(rng, r, c, lo=-5, hi=5, zero_rate=0.3):
    return [[0 if rng.random() < zero_rate else rng.randint(lo, hi) for _ in range(c)] for _ in range(r)]


def test_rank_matches_sympy():
    rng = random.Random(3)
    for _ in range(40):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        M = _rand(rng, r, c)
        if rng.random() < 0.4 and r > 1:
            M[-1] = [a + 2 * b for a, b in zip(M[0], M[1 % r])]
        assert linalg.rank(M, QQ) == sympy.Matrix(M).rank()


def test_rank_rational_entries():
    from fractions import Fraction as Fr

    assert linalg.rank([[Fr(1, 2), Fr(1, 3)], [Fr(3, 2), 1]], QQ) == 1


def test_rank_mod_p_and_nullspace():
    F = GF(7)
    M = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert linalg.rank(M, F) == 2
    ns = linalg.nullspace(M, F, 3)
    assert len(ns) == 1
    v = ns[0]
    assert all(sum(a * b for a, b in zip(row, v)) % 7 == 0 for row in M)


def test_backends_agree():
    rng = random.Random(11)
    p = 2147483629
    c = pytest.importorskip("jetscheme._ckernels")
    for _ in range(30):
        M = _rand(rng, rng.randint(1, 9), rng.randint(1, 9), 0, p - 1)
        assert c.rank_mod_p(M, p) == _pykernels.rank_mod_p(M, p)
        a = [rng.randrange(p) for _ in range(rng.randint(1, 12))]
        b = [rng.randrange(p) for _ in range(rng.randint(1, 12))]
        n = rng.randint(0, 15)
        assert list(c.series_mul_mod_p(a, b, n, p)) == _pykernels.series_mul_mod_p(a, b, n, p)


def test_backend_flag():
    assert kernels.BACKEND in ("cython", "python")
