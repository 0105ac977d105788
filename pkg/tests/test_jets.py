import pytest
import sympy

from jetscheme import GF, QQ, JetContext, PolyRing
from jetscheme.errors import InputError, JetVariableInInput
from jetscheme.jets import (
    first_jet_sym_presentation_check,
    hasse_schmidt,
    hasse_schmidt_leibniz,
    jet_ideal,
    jet_name,
    parse_jet_name,
)


def test_names_round_trip():
    assert jet_name("x", 0) == "x" and jet_name("x", 3) == "x@3"
    assert parse_jet_name("y@12") == ("y", 12) and parse_jet_name("y") == ("y", 0)


def test_context_layout(plane):
    ctx = JetContext(plane, 2)
    assert ctx.ring.names == ("x", "y", "x@1", "y@1", "x@2", "y@2")
    assert ctx.t_weights == (0, 0, 1, 1, 2, 2)
    with pytest.raises(InputError):
        JetContext(plane, -1)


def test_cusp_golden(plane):
    ctx = JetContext(plane, 2)
    got = [str(p) for p in jet_ideal(["y^2 - x^3"], ctx)]
    assert got == [
        "y^2 - x^3",
        "2*y*y@1 - 3*x^2*x@1",
        "2*y*y@2 - 3*x^2*x@2 + y@1^2 - 3*x*x@1^2",
    ]


@pytest.mark.parametrize("poly", ["x^2*y - y^3 + 4", "x*y^3 + 1/2*x", "(x + y)^4"])
def test_against_sympy_substitution(plane, poly):
    n = 3
    ctx = JetContext(plane, n)
    t = sympy.Symbol("t")
    subs = {}
    for v in ("x", "y"):
        subs[sympy.Symbol(v)] = sum(sympy.Symbol(jet_name(v, q).replace("@", "_")) * t**q for q in range(n + 1))
    expr = sympy.sympify(poly.replace("^", "**")).subs(subs, simultaneous=True)
    expanded = sympy.Poly(sympy.expand(expr), t)
    for q, h in enumerate(hasse_schmidt(plane.convert(poly), ctx)):
        want = sympy.expand(expanded.coeff_monomial(t**q))
        assert sympy.expand(sympy.sympify(str(h).replace("^", "**").replace("@", "_"))) == want


def test_routes_agree_in_char_p():
    R = PolyRing(GF(5), ("x", "y"))
    ctx = JetContext(R, 4)
    f = R.convert("x^5 + 3*x*y^2 + y")
    assert hasse_schmidt(f, ctx) == hasse_schmidt_leibniz(f, ctx)


def test_zero_mask_frobenius():
    R = PolyRing(GF(3), ("x",))
    ji = jet_ideal(["x^3"], JetContext(R, 3))
    assert ji.zero_mask == [False, True, True, False]
    assert [str(p) for p in ji.nonzero()] == ["x^3", "x@1^3"]
    assert ji.labels[3] == (0, 3)


def test_first_jet_check(plane):
    assert first_jet_sym_presentation_check(["y^2 - x^3", "x*y"], JetContext(plane, 1))
    with pytest.raises(InputError):
        first_jet_sym_presentation_check(["x"], JetContext(plane, 2))


def test_jet_variables_rejected():
    with pytest.raises(JetVariableInInput):
        JetContext(PolyRing(QQ, ("x@1",)), 1)
