import pytest
from conftest import CUSP, NODE, UMBRELLA, arc

from jetscheme import GF, QQ, JetContext, PolyRing
from jetscheme.errors import CertificateNotFound, CharZeroRequired, InputError, MapNotWellDefined
from jetscheme.groebner import buchberger
from jetscheme.invariants import (
    ArcSite,
    embdim_arc_window,
    embdim_formula,
    embdim_jet_direct,
    etale_transform_check,
    generic_arc,
    generic_projection,
    jet_codim_partial,
    morphism_jacobian,
    stable_value,
    trdeg_of_truncation,
)


@pytest.fixture
def line():
    return PolyRing(QQ, ("s",))


def test_trdeg(plane):
    g = generic_arc(plane, {"x": "s^2", "y": "s^3"}, 6)
    assert g.params == ("u1", "u2", "u3", "u4", "u5", "u6")
    assert [trdeg_of_truncation(g, n) for n in (0, 1, 2, 3, 4)] == [0, 0, 1, 2, 3]
    assert trdeg_of_truncation(arc(plane, {"x": "t^2", "y": "t^3"}), 5) == 0


def test_trdeg_needs_char_zero():
    R = PolyRing(GF(5), ("x", "y"))
    g = generic_arc(R, {"x": "s^2", "y": "s^3"}, 4)
    with pytest.raises(CharZeroRequired):
        trdeg_of_truncation(g, 3)
    # a rational arc in char p is fine
    assert trdeg_of_truncation(arc(R, {"x": "t^2", "y": "t^3"}), 3) == 0


@pytest.mark.parametrize(
    "gens,images,offset,slope",
    [
        (CUSP, {"x": "t^2", "y": "t^3"}, 4, 1),
        (NODE, {"x": "t", "y": "0"}, 2, 1),
        (UMBRELLA, {"x": "t^2", "y": "t", "z": "t^2"}, 4, 2),
        (UMBRELLA, {"x": "t", "y": "1", "z": "t^2"}, 2, 2),
    ],
)
def test_jet_embdim_vs_formula(gens, images, offset, slope):
    ring = PolyRing(QQ, tuple(images))
    a = arc(ring, images)
    for n in range(3, 7):
        direct = embdim_jet_direct(gens, JetContext(ring, n), a)
        assert direct == slope * n + offset
        f = embdim_formula(ArcSite([ring.convert(g) for g in gens], a, n))
        assert f.certified and f.value == direct


def test_formula_bracket_in_char_p():
    R = PolyRing(GF(5), ("x", "y"))
    g = generic_arc(R, {"x": "s^2", "y": "s^3"}, 6)
    f = embdim_formula(ArcSite([R.convert("y^2 - x^3")], g, 4, trdeg=3))
    assert f.value == [2, 5] and any("bounds only" in n for n in f.notes)


def test_arc_window_and_codim(plane):
    g = generic_arc(plane, {"x": "s^2", "y": "s^3"}, 10)
    seq = embdim_arc_window(CUSP, g, range(1, 6))
    assert stable_value(seq) == 2
    codim = jet_codim_partial(g, 1, range(1, 6))
    assert stable_value(codim) == 2
    with pytest.raises(InputError):
        embdim_arc_window(NODE, arc(plane, {"x": "0", "y": "0"}), range(1, 3))


def test_stable_value():
    assert stable_value([1, 2, 3, 3, 3]) == 3
    assert stable_value([3, 3, 4]) is None
    assert stable_value([(1, 5), (2, 5)], run=2) == 5
    assert stable_value([5, 5]) is None


def test_generic_projection(space):
    a = arc(space, {"x": "t^2", "y": "t", "z": "t^2"})
    P = generic_projection(UMBRELLA, a, seed=0)
    cert = P.certificate
    assert cert["full_rank"] and cert["ord_fitt_d_omega_x"] == cert["ord_fitt_0_omega_x_over_y"]
    assert P.d == 2
    again = generic_projection(UMBRELLA, a, seed=0)
    assert again.to_json() == P.to_json()


def test_projection_refuses_thin_arc(plane):
    with pytest.raises(CertificateNotFound):
        generic_projection(NODE, arc(plane, {"x": "0", "y": "0"}))


def test_morphism_jacobian(line, plane):
    I = morphism_jacobian([], CUSP, ["s^2", "s^3"], line, plane)
    gb = buchberger(I, ring=line)
    assert [str(p) for p in gb] == ["s"]
    with pytest.raises(MapNotWellDefined):
        morphism_jacobian([], CUSP, ["s", "s"], line, plane)


@pytest.mark.parametrize("images,expected", [(["w"], 0), (["w^2"], 1)])
def test_etale_line_maps(images, expected):
    src = PolyRing(QQ, ("w",))
    g = generic_arc(src, {"w": "s"}, 8)
    out = etale_transform_check([], g, [], images, PolyRing(QQ, ("v",)), range(1, 6))
    assert out["ord_jac_f"] == expected
    assert out["stable_difference"] == expected and out["equals_ord"] and out["within_bound"]
    assert out["source_smooth"]


def test_etale_normalization(line, plane):
    g = generic_arc(line, {"s": "s"}, 12)
    out = etale_transform_check([], g, CUSP, ["s^2", "s^3"], plane, range(2, 7), jet_level_table=False)
    assert out["ord_jac_f"] == 1 and out["stable_difference"] == 1 and out["equals_ord"]
