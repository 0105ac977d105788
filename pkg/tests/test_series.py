import random

import pytest

from jetscheme import GF, QQ
from jetscheme.errors import MixedContexts, PrecisionExhausted
from jetscheme.parser import parse_series
from jetscheme.series import (
    TruncSeries,
    Valuation,
    determinantal_divisors,
    min_valuation,
    series_matmul,
    smith_normal_form,
)


def s(text, prec=10, field=QQ):
    return parse_series(text, prec, field)


def test_arithmetic_and_inverse():
    assert s("1-t") * s("1+t") == s("1-t^2")
    inv = s("1+t").inverse()
    assert inv.coeffs == [(-1) ** k for k in range(10)]
    assert (s("2+3*t^2") * s("2+3*t^2").inverse()) == TruncSeries.one(QQ, 10)
    assert (s("t") ** 4).valuation() == Valuation(4)


def test_valuation_and_tail():
    assert s("t^3 + t^5").valuation() == Valuation(3)
    v = s("0").valuation()
    assert not v.is_finite and str(v) == "AtLeast(10)"
    assert min_valuation([Valuation(4), Valuation.at_least(7)]) == Valuation(4)
    # precision drops to the smaller operand
    assert (s("1", 5) + s("t", 8)).prec == 5


def test_mixed_domains_rejected():
    with pytest.raises(MixedContexts):
        s("1") + s("1", field=GF(7))


def test_smith_golden():
    A = [[s("t^2"), s("t^3")], [s("0"), s("t")]]
    F = smith_normal_form(A)
    assert F.exponents == (1, 2) and F.rank == 2 and F.tail is None
    UA = series_matmul(series_matmul(F.U, A), F.V)
    for i in range(2):
        for j in range(2):
            want = s(f"t^{F.exponents[i]}") if i == j else s("0")
            assert UA[i][j] == want


def test_smith_tail_and_exhaustion():
    F = smith_normal_form([[s("t^2"), s("0")], [s("0"), s("0")]])
    assert F.exponents == (2,) and F.tail == Valuation.at_least(10)
    with pytest.raises(PrecisionExhausted):
        smith_normal_form([[s("t^3"), s("0")], [s("0"), s("t^8")]])


def test_smith_agrees_with_determinantal_divisors():
    rng = random.Random(5)
    F = GF(101)
    for _ in range(25):
        n = rng.randint(1, 3)
        M = []
        for _ in range(n):
            row = []
            for _ in range(n):
                c = [0] * rng.randint(0, 3) + [rng.randrange(101) for _ in range(4)]
                row.append(TruncSeries(F, c, 24))
            M.append(row)
        snf = smith_normal_form(M, track=False)
        divs = determinantal_divisors(M)
        partial = 0
        for k, a in enumerate(snf.exponents):
            partial += a
            assert divs[k] == Valuation(partial)
