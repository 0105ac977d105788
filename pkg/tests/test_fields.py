from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from jetscheme.errors import DivisionByZero, InputError, MixedFields
from jetscheme.fields import GF, QQ, field_from_spec


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert (a + b).value == 1
    assert (a * b).value == 1
    assert (a / b * b) == a
    assert F(Fraction(1, 2)).value == 4
    assert F(3) ** 6 == F(1)


def test_qq_normalizes_integral_fractions():
    assert QQ.convert(Fraction(4, 2)) == 2
    assert isinstance(QQ.convert(Fraction(4, 2)), int)
    assert QQ(Fraction(1, 3)) * QQ(3) == QQ(1)


def test_errors():
    with pytest.raises(DivisionByZero):
        QQ(1) / QQ(0)
    with pytest.raises(DivisionByZero):
        GF(5).convert(Fraction(1, 10))
    with pytest.raises(MixedFields):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(InputError):
        GF(9)


def test_field_specs():
    assert field_from_spec("QQ") is QQ
    assert field_from_spec("GF(101)") == GF(101)
    assert GF(101) is GF(101)
    assert GF(13).characteristic == 13


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_inverse_roundtrip_mod_p(a, b):
    F = GF(1000003)
    x = F(Fraction(a, b))
    if x.value:
        assert x * x.inv() == F(1)


@given(st.fractions(), st.fractions())
def test_qq_matches_fraction(a, b):
    assert QQ.add(QQ.convert(a), QQ.convert(b)) == a + b
    assert QQ.mul(QQ.convert(a), QQ.convert(b)) == a * b
