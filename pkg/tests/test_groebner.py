import random

import pytest
import sympy

from jetscheme import QQ, PolyRing
from jetscheme.errors import BudgetExceeded
from jetscheme.groebner import Budget, buchberger, krull_dim, normal_form, s_polynomial, standard_monomial_count
from jetscheme.polynomials import GREVLEX, LEX, random_polynomial

SYM = sympy.symbols("x y z")


def _sympy_basis(polys, order):
    exprs = [sympy.sympify(str(p).replace("^", "**")) for p in polys]
    G = sympy.groebner(exprs, *SYM, order=order, domain="QQ")
    return {sympy.Poly(g, *SYM).monic().as_expr() for g in G.exprs}


def _ours(gb):
    return {sympy.Poly(sympy.sympify(str(p).replace("^", "**")), *SYM).as_expr() for p in gb}


@pytest.mark.parametrize("order,name", [(GREVLEX, "grevlex"), (LEX, "lex")])
def test_reduced_basis_matches_sympy(space, order, name):
    rng = random.Random(11)
    for _ in range(6):
        gens = [random_polynomial(space, rng, rng.randint(2, 3), rng.randint(1, 3)) for _ in range(rng.randint(2, 3))]
        gens = [g for g in gens if g.terms]
        gb = buchberger(gens, order)
        assert _ours(gb) == _sympy_basis(gens, name)


def test_lex_example(plane):
    gb = buchberger([plane.convert("x - y^2"), plane.convert("y^4 - y")], LEX)
    assert [str(p) for p in gb] == ["-y^2 + x", "y^4 - y"]
    assert gb.contains(plane.convert("x^2 - y"))
    assert gb.krull_dim() == 0


def test_lex_reduction_of_two_parabolas(plane):
    gb = buchberger([plane.convert("x^2 - y"), plane.convert("y^2 - x")], LEX)
    assert [str(p) for p in gb] == ["-y^2 + x", "y^4 - y"]
    assert gb.contains(plane.convert("x*y^2 - x^2"))
    # the unreduced pair x^2 - y, y^4 - y has 8 common zeros, the ideal only 4
    assert not gb.contains(plane.convert("x")) and gb.krull_dim() == 0


def test_membership_and_s_polynomial(plane):
    f, g = plane.convert("x^2*y - 1"), plane.convert("x*y^2 - x")
    gb = buchberger([f, g])
    assert gb.contains(s_polynomial(f, g, GREVLEX))
    assert normal_form(plane.convert("x"), gb).terms


@pytest.mark.parametrize(
    "gens,dim",
    [
        (["y^2 - x^3"], 2),
        (["x*y", "x*z"], 2),
        (["x*y", "y*z", "x*z"], 1),
        (["x - 1", "y - 2", "z"], 0),
        (["x", "x - 1"], float("-inf")),
        (["0"], 3),
    ],
)
def test_krull_dim(space, gens, dim):
    gb = buchberger([space.convert(g) for g in gens])
    assert krull_dim(gb) == dim


def test_standard_monomials(weighted_plane):
    gb = buchberger([weighted_plane.convert("y^2 - x^3")])
    # weighted Hilbert function of the cusp: 1 in degrees 0, 2, 3, ..., and 0 in degree 1
    assert [standard_monomial_count(gb, (2, 3), k) for k in range(8)] == [1, 0, 1, 1, 1, 1, 1, 1]


def test_zero_ideal_counts_all_monomials(weighted_plane):
    gb = buchberger([weighted_plane.convert("0")])
    direct = [sum(1 for a in range(k + 1) for b in range(k + 1) if 2 * a + 3 * b == k) for k in range(12)]
    assert [standard_monomial_count(gb, (2, 3), k) for k in range(12)] == direct


def test_budget(plane):
    with pytest.raises(BudgetExceeded):
        buchberger([plane.convert("x^3 - y^2"), plane.convert("x^2*y - x")], budget=Budget(max_pairs=1))
