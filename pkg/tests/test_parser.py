import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jetscheme import GF, QQ, PolyRing
from jetscheme.errors import NegativeExponent, ParseError, UnknownVariable
from jetscheme.parser import parse_polynomial, parse_series, tokenize, variables_in
from jetscheme.polynomials import random_polynomial

R = PolyRing(QQ, ("x", "y", "x@1"))


def test_basic_parse():
    f = parse_polynomial("y^2 - x^3", R)
    assert str(f) == "y^2 - x^3"
    assert parse_polynomial("2*y*x@1 - 1/2", R) == R.gen("y") * R.gen("x@1") * 2 - R.const(Fraction(1, 2))
    assert parse_polynomial("-(x + 1)^2", R) == -((R.gen("x") + 1) ** 2)


def test_series_parse():
    s = parse_series("t^2 + 1/2*t^5", 8, QQ)
    assert s.coeffs[2] == 1 and s.coeffs[5] == Fraction(1, 2) and s.prec == 8
    assert parse_series("t^9", 8, QQ).is_zero()


@pytest.mark.parametrize(
    "text, line, col",
    [("x y", 1, 3), ("x +", 1, 4), ("(x", 1, 3), ("x^y", 1, 3), ("2 3", 1, 3), ("x\n + * y", 2, 4), ("x $ y", 1, 3)],
)
def test_syntax_errors_carry_location(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_polynomial(text, R)
    assert (err.value.line, err.value.col) == (line, col)
    assert isinstance(err.value, SyntaxError)


def test_other_errors():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x + w", R)
    with pytest.raises(NegativeExponent):
        parse_polynomial("x^-1", R)
    with pytest.raises(ParseError):
        parse_polynomial("1/0", R)
    with pytest.raises(ParseError):
        parse_polynomial("", R)


def test_tokens_and_variables():
    assert [t[0] for t in tokenize("x@2*3")] == ["ident", "op", "num", "end"]
    assert variables_in("y*x + y@1") == ["y", "x", "y@1"]


def test_fractions_in_prime_field():
    F = GF(7)
    S = PolyRing(F, ("x",))
    assert parse_polynomial("1/2*x", S) == S.gen("x") * 4


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_render_roundtrip(seed):
    rng = random.Random(seed)
    for F in (QQ, GF(101)):
        S = PolyRing(F, ("x", "y", "z@2"))
        f = random_polynomial(S, rng, rng.randint(0, 5), 5)
        assert parse_polynomial(str(f), S) == f


_MUTATIONS = ["*", "^", "(", ")", "+*", "x x", "^-", "@", "1/", "$"]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_invalid_mutations_never_parse_to_a_value(seed):
    rng = random.Random(seed)
    S = PolyRing(QQ, ("x", "y"))
    text = str(random_polynomial(S, rng, rng.randint(1, 4), 4))
    pos = rng.randint(0, len(text))
    bad = text[:pos] + " " + rng.choice(_MUTATIONS) + " " + text[pos:]
    try:
        value = parse_polynomial(bad, S)
    except (ParseError, NegativeExponent, UnknownVariable):
        return
    # a mutation can still be well formed (e.g. a stray '+' after '*'); then it
    # must agree with evaluating the same text by an independent route
    import sympy

    x, y = sympy.symbols("x y")
    expect = sympy.expand(sympy.sympify(bad.replace("^", "**"), locals={"x": x, "y": y}))
    assert sympy.expand(sympy.sympify(str(value).replace("^", "**"), locals={"x": x, "y": y}) - expect) == 0
