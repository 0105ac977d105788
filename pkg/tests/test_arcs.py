import pytest
from conftest import CUSP, NODE, UMBRELLA, arc

from jetscheme import QQ, JetContext, PolyRing, linalg
from jetscheme.arcs import (
    arc_fiber_homotopy,
    fiber_profile,
    fiber_profile_auto,
    jet_fiber_dims,
    jet_profile,
    lci_cotangent_presentation,
    truncation_kernel_cokernel,
    truncation_model,
    truncation_model_from_profile,
)
from jetscheme.errors import ArcNotOnVariety, InputError, PrecisionExhausted
from jetscheme.jets import jet_ideal
from jetscheme.polynomials import jacobian_matrix


def _profile(ring, gens, images, prec=30):
    K = lci_cotangent_presentation([ring.convert(g) for g in gens])
    return K, arc(ring, images, prec), fiber_profile(K, arc(ring, images, prec), prec)


def _tangent_dims(ring, gens, images, n):
    """(dim ker, dim coker) of the jet Jacobian evaluated at the truncated arc."""
    ctx = JetContext(ring, n)
    polys = list(jet_ideal(gens, ctx))
    J = jacobian_matrix(polys, ring=ctx.ring)
    a = arc(ring, images)
    pt = [a.coefficient(x, q) for q in range(n + 1) for x in ring.names]
    r = linalg.rank([[e.evaluate(pt) for e in row] for row in J.entries], QQ)
    return ctx.nvars - r, len(polys) - r


def test_cusp_profile(plane):
    _, _, p = _profile(plane, CUSP, {"x": "t^2", "y": "t^3"})
    assert (p.b, p.c, p.a) == ([1, 0], [1, 0], [(3,), ()])
    assert p.check_ranks()
    assert arc_fiber_homotopy(p, 1) == {"free_rank": 0, "torsion": [3]}
    assert jet_profile(p, 1).a[0] == (2,)


def test_thin_arc_profile(plane):
    _, _, p = _profile(plane, NODE, {"x": "0", "y": "0"})
    assert (p.b, p.c) == ([2, 1], [0, 0])


@pytest.mark.parametrize(
    "gens,images",
    [
        (CUSP, {"x": "t^2", "y": "t^3"}),
        (NODE, {"x": "t^2 + t^3", "y": "0"}),
        (UMBRELLA, {"x": "t^2", "y": "t", "z": "t^2"}),
        (UMBRELLA, {"x": "t^3", "y": "t", "z": "t^4"}),
    ],
)
def test_jet_fiber_dims_match_tangent_spaces(gens, images):
    ring = PolyRing(QQ, tuple(images))
    _, _, p = _profile(ring, gens, images)
    for n in range(1, 7):
        ker, coker = _tangent_dims(ring, gens, images, n)
        d0, d1 = jet_fiber_dims(p, n, 0), jet_fiber_dims(p, n, 1)
        if d0.certified:
            assert d0.value == ker
        if d1.certified:
            assert d1.value == coker


@pytest.mark.parametrize("n,m", [(3, 6), (4, 9), (5, 8)])
def test_truncation_models_agree(plane, n, m):
    K, a, p = _profile(plane, CUSP, {"x": "t^2", "y": "t^3"})
    for i in (0, 1):
        ker, coker = truncation_kernel_cokernel(p, n, m, i)
        model = truncation_model(K, a, n, m, i)
        assert model == truncation_model_from_profile(p, n, m, i, QQ)
        if ker.certified:
            assert (ker.value, coker.value) == model


def test_truncation_errors(plane):
    K, a, p = _profile(plane, CUSP, {"x": "t^2", "y": "t^3"})
    with pytest.raises(InputError):
        truncation_kernel_cokernel(p, 5, 4, 0)
    assert not truncation_kernel_cokernel(p, 3, 4, 0)[0].certified


def test_arc_not_on_variety(plane):
    K = lci_cotangent_presentation([plane.convert("y^2 - x^3")])
    with pytest.raises(ArcNotOnVariety):
        fiber_profile(K, arc(plane, {"x": "t", "y": "t"}))


def test_precision_retry(plane):
    K = lci_cotangent_presentation([plane.convert("y^2 - x^3")])
    a = arc(plane, {"x": "t^2", "y": "t^3"}, prec=3)
    with pytest.raises(PrecisionExhausted):
        fiber_profile(K, a, 3)
    assert fiber_profile_auto(K, a, 3).a[0] == (3,)
