import pytest
from conftest import CUSP, UMBRELLA, arc

from jetscheme import QQ, PolyRing
from jetscheme.arcs import fiber_profile, lci_cotangent_presentation
from jetscheme.errors import InputError
from jetscheme.groebner import buchberger
from jetscheme.koszul import koszul_complex
from jetscheme.support import (
    csi_full_order,
    csi_ideal,
    csi_order_via_profile,
    fitting_ideal,
    higher_jacobian,
    invariant_sum_via_orders,
    ord_along_arc,
)


def _same_ideal(I, J, ring=None):
    ring = ring or (I or J)[0].ring
    gi, gj = buchberger(I, ring=ring), buchberger(J, ring=ring)
    return all(gj.contains(f) for f in I) and all(gi.contains(f) for f in J)


@pytest.mark.parametrize("gens", [CUSP, UMBRELLA, ["x*y", "x*z"]])
def test_level_zero_support_is_fitting(gens):
    ring = PolyRing(QQ, ("x", "y", "z"))
    K = lci_cotangent_presentation([ring.convert(g) for g in gens])
    for p in range(0, 3):
        assert _same_ideal(csi_ideal(K, 0, p), fitting_ideal(K.diff(1), p), ring)


def test_cusp_jacobian_ideal(plane):
    I = higher_jacobian([plane.convert("y^2 - x^3")], 0, 1)
    assert _same_ideal(I, [plane.convert("x^2"), plane.convert("y")])
    assert [str(g) for g in higher_jacobian([plane.convert("y^2 - x^3")], 0, 2)] == ["1"]


def test_negative_levels_rejected(plane):
    K = lci_cotangent_presentation([plane.convert("x*y")])
    with pytest.raises(InputError):
        csi_ideal(K, -1, 0)


@pytest.mark.parametrize(
    "gens,images",
    [
        (CUSP, {"x": "t^2", "y": "t^3", "z": "0"}),
        (UMBRELLA, {"x": "t^2", "y": "t", "z": "t^2"}),
        (UMBRELLA, {"x": "t", "y": "1", "z": "t^2"}),
        (["x*y", "x*z"], {"x": "t", "y": "0", "z": "0"}),
    ],
)
def test_orders_two_ways(gens, images):
    ring = PolyRing(QQ, ("x", "y", "z"))
    K = lci_cotangent_presentation([ring.convert(g) for g in gens])
    a = arc(ring, images, prec=40)
    prof = fiber_profile(K, a)
    for i in (0, 1):
        for p in range(0, K.rank(i) + 1):
            assert csi_order_via_profile(prof, i, p) == ord_along_arc(csi_ideal(K, i, p), a)
    assert invariant_sum_via_orders(prof, 1) == sum(prof.a_at(1))
    assert csi_full_order(prof, 1) == sum(prof.a_at(0))


def test_koszul_support_of_regular_sequence(plane):
    K = koszul_complex(["x", "y"], ring=plane)
    m = [plane.convert("x"), plane.convert("y")]
    m2 = [plane.convert(g) for g in ("x^2", "x*y", "y^2")]
    assert _same_ideal(csi_ideal(K, 0, 0), m)
    assert _same_ideal(csi_ideal(K, 1, 0), m2)
    assert _same_ideal(csi_ideal(K, 1, 1), m)
    assert [str(g) for g in csi_ideal(K, 1, 2)] == ["1"]
