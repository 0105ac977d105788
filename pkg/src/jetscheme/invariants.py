"""Embedding dimensions and jet codimension of arcs, generic projections, map Jacobians.

Statements about the arc space are checked on finite windows of levels.  Two
embedding-dimension readings are available:

* jet level: the local ring of the truncation ``alpha_n`` on ``J_n(X)``
  (:func:`embdim_jet_direct`, :func:`embdim_formula`);
* arc level: the image of the cotangent space at ``alpha_n`` inside the one at
  ``alpha_m`` for ``m >> n`` (:func:`embdim_arc_direct`).  Its stable value is the
  embedding dimension of the arc space at ``alpha``, which is what projections,
  étale maps and the jet codimension are compared against.

Everything here is characteristic 0 unless the arc has no parameters.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from . import linalg
from .arcs import Arc, fiber_profile_auto, lci_cotangent_presentation
from .errors import (
    CertificateNotFound,
    CharZeroRequired,
    InputError,
    MapNotWellDefined,
)
from .groebner import buchberger
from .jets import JetContext, jet_ideal
from .parser import parse_many
from .polynomials import (
    PolyMatrix,
    PolyRing,
    Polynomial,
    jacobian_matrix,
    minors_ideal,
    rank_over_fraction_field,
    substitute,
)
from .results import Certified
from .series import Valuation
from .support import csi_order_via_profile, fitting_ideal, ord_along_arc

__all__ = [
    "ArcSite",
    "LinearProjection",
    "trdeg_of_truncation",
    "embdim_jet_direct",
    "embdim_formula",
    "embdim_arc_direct",
    "embdim_arc_window",
    "jet_codim_partial",
    "stable_value",
    "generic_arc",
    "generic_projection",
    "morphism_jacobian",
    "etale_transform_check",
    "jacobian_order",
]

DEFAULT_WINDOW = range(1, 11)
DEFAULT_RUN = 3


def _require_char_zero(arc: Arc, what):
    # a parameter-free arc has a rational residue field, so nothing is inseparable
    if arc.field.characteristic and arc.params:
        raise CharZeroRequired(f"{what} needs characteristic 0 for arcs with parameters")


def _eval_ring(arc: Arc):
    return arc.param_ring or PolyRing(arc.field, ())


def _as_eval(E, v):
    return v if isinstance(v, Polynomial) else E.const(v)


def trdeg_of_truncation(arc: Arc, n: int) -> int:
    """Transcendence degree of the field generated by the coefficients of ``alpha_n``."""
    _require_char_zero(arc, "trdeg_of_truncation")
    if not arc.params or n < 0:
        return 0
    coeffs = [c for c in arc.coefficient_polys(n) if c.terms and not c.is_constant()]
    if not coeffs:
        return 0
    return rank_over_fraction_field(jacobian_matrix(coeffs, ring=arc.param_ring).transpose())


def _jet_jacobian_at(gens, ctx: JetContext, arc: Arc):
    """Jacobian of the jet ideal (rows: jet variables) with the jet values of ``arc`` plugged in."""
    E = _eval_ring(arc)
    ji = jet_ideal(gens, ctx)
    polys = [p for p in ji if p.terms]
    if not polys:
        return PolyMatrix(E, ctx.nvars, 0, [[] for _ in range(ctx.nvars)])
    J = jacobian_matrix(polys, ring=ctx.ring)
    vals = [_as_eval(E, v) for v in arc.jet_values(ctx)]
    mapping = dict(zip(ctx.ring.names, vals))
    cache = {}
    entries = []
    for row in J.entries:
        out = []
        for x in row:
            if not x.terms:
                out.append(E.zero)
                continue
            key = frozenset(x.terms.items())
            v = cache.get(key)
            if v is None:
                v = substitute(x, mapping)
                v = _as_eval(E, v)
                cache[key] = v
            out.append(v)
        entries.append(out)
    return PolyMatrix(E, J.rows, J.cols, entries)


@dataclass
class ArcSite:
    """An arc on ``V(gens)`` looked at through its truncation at level ``n``."""

    gens: list
    arc: Arc
    n: int
    trdeg: int = None
    embdim: int = None
    notes: list = dc_field(default_factory=list)

    def __post_init__(self):
        if self.n < 0:
            raise InputError("jet level must be nonnegative")
        if self.trdeg is None:
            self.trdeg = trdeg_of_truncation(self.arc, self.n)

    @property
    def dim_closure(self):
        return self.trdeg

    @property
    def ambient(self):
        return self.arc.base_ring

    def to_json(self):
        return {
            "level": self.n,
            "trdeg": self.trdeg,
            "dim_closure": self.dim_closure,
            "embdim": self.embdim,
            "arc": self.arc.to_json(),
        }


def embdim_jet_direct(gens, ctx: JetContext, arc: Arc) -> int:
    """``#jet variables - rank(jet Jacobian at alpha_n) - trdeg``."""
    _require_char_zero(arc, "embdim_jet_direct")
    gens = parse_many(gens, ctx.base_ring)
    arc.check_on(gens, max(arc.prec, ctx.n + 1))
    a_n = arc.truncation(ctx.n)
    J = _jet_jacobian_at(gens, ctx, a_n)
    r = rank_over_fraction_field(J) if J.cols else 0
    return ctx.nvars - r - trdeg_of_truncation(a_n, ctx.n)


def _smooth_at_origin(gens, arc: Arc, codim):
    """Jacobian of full rank ``codim`` at the closed point ``alpha(0)``."""
    if codim == 0:
        return True
    J = jacobian_matrix(gens, ring=arc.base_ring)
    N = 1
    vals = [[arc.substitute_series(x, N).coeffs[0] for x in row] for row in J.entries]
    E = _eval_ring(arc)
    M = PolyMatrix(E, J.rows, J.cols, [[_as_eval(E, v) for v in row] for row in vals])
    return rank_over_fraction_field(M) == codim


def embdim_formula(site: ArcSite, profile=None) -> Certified:
    """``(n+1) d - dim closure(alpha_n) + ord Jac^(0,d)`` with ``d = b_0``.

    The correction term from imperfection of the residue field is dropped only
    where it provably vanishes (characteristic 0, or smooth at ``alpha(0)``);
    otherwise the value is a bracket ``[lower, upper]``.
    """
    gens, arc, n = site.gens, site.arc, site.n
    if profile is None:
        profile = fiber_profile_auto(lci_cotangent_presentation(gens, arc.base_ring), arc)
    d = profile.b_at(0)
    ord0 = sum(profile.a_at(0))
    upper = (n + 1) * d - site.dim_closure + ord0
    notes = []
    ok = profile.certified
    if n < ord0:
        ok = False
        notes.append(f"needs n >= ord Jac^(0,{d}) = {ord0}")
    char0 = arc.field.characteristic == 0
    if char0 or not arc.params or _smooth_at_origin(gens, arc, arc.base_ring.nvars - d):
        return Certified(upper, ok, notes)
    v1 = csi_order_via_profile(profile, 1, 0)
    if not v1.exact:
        return Certified([None, upper], False, notes + ["ord Jac^(1,0) is infinite: no lower bound"])
    ord1 = v1.order
    if n < ord1:
        ok = False
        notes.append(f"bracket needs n >= ord Jac^(1,0) = {ord1}")
    notes.append("imperfection term not provably zero: bounds only")
    return Certified([upper - ord1, upper], ok, notes)


def _tail_rows(J: PolyMatrix, ctx: JetContext, n: int):
    keep = [ctx.index(x, q) for q in range(n + 1, ctx.n + 1) for x in ctx.base_ring.names]
    return PolyMatrix(J.ring, len(keep), J.cols, [J.entries[i] for i in keep])


def embdim_arc_direct(gens, arc: Arc, n: int, m: int) -> int:
    """Dimension of the image of the truncation map on cotangent spaces, level ``n`` into ``m``.

    With ``V_n`` jet variables up to level ``n``, ``D_n`` the coefficient
    Jacobian of ``alpha_n`` and ``R_m`` the jet Jacobian at ``alpha_m``, the image
    is ``V_n - rank D_n - rank R_m + rank(R_m restricted to levels > n)``.
    """
    if m < n:
        raise InputError("need m >= n")
    _require_char_zero(arc, "embdim_arc_direct")
    base = arc.base_ring
    gens = parse_many(gens, base)
    arc.check_on(gens, max(arc.prec, m + 1))
    V_n = (n + 1) * base.nvars
    t = trdeg_of_truncation(arc, n)
    if not gens:
        return V_n - t
    ctx = JetContext(base, m)
    R = _jet_jacobian_at(gens, ctx, arc.truncation(m))
    if not R.cols:
        return V_n - t
    r_all = rank_over_fraction_field(R)
    tail = _tail_rows(R, ctx, n)
    r_tail = rank_over_fraction_field(tail) if tail.rows else 0
    return V_n - t - r_all + r_tail


def jacobian_order(gens, arc, d, prec):
    """``ord_alpha`` of the ``(nvars - d)``-minors of the Jacobian, computed directly."""
    J = jacobian_matrix(gens, ring=arc.base_ring)
    return ord_along_arc(fitting_ideal(J, d), arc, prec)


def embdim_arc_window(gens, arc: Arc, window=DEFAULT_WINDOW, d=None, lag=None):
    """``[(n, value)]`` of :func:`embdim_arc_direct` at ``m = n + lag``.

    The default lag is the order of the Jacobian ideal along the arc, which is
    where the image stops depending on ``m``.
    """
    base = arc.base_ring
    gens = parse_many(gens, base)
    if d is None:
        d = base.nvars - len(gens)
    if lag is None:
        lag = 0
        if gens:
            v = jacobian_order(gens, arc, d, arc.prec)
            if not v.exact:
                raise InputError("the arc is thin: the Jacobian ideal vanishes along it")
            lag = v.order
    return [(n, embdim_arc_direct(gens, arc, n, n + lag)) for n in window]


def jet_codim_partial(arc: Arc, d: int, window=DEFAULT_WINDOW):
    """``[(n, (n+1) d - dim closure(alpha_n))]`` over the window."""
    return [(n, (n + 1) * d - trdeg_of_truncation(arc, n)) for n in window]


def stable_value(seq, run=DEFAULT_RUN):
    """Common value of the last ``run`` entries, or ``None`` if they differ."""
    vals = [v for _, v in seq] if seq and isinstance(seq[0], tuple) else list(seq)
    if len(vals) < run:
        return None
    tail = vals[-run:]
    return tail[0] if all(v == tail[0] for v in tail) else None


def generic_arc(base_ring: PolyRing, images: dict, terms: int, start: int = 1, param="u", prec=None):
    """Substitute ``s = sum_{k=start}^{terms} u_k t^k`` for ``s`` in each image.

    ``images`` maps base variables to polynomials (or strings) in a single
    variable ``s``; the result is an :class:`Arc` with parameters ``u_start..u_terms``.
    """
    from .parser import parse_polynomial

    params = tuple(f"{param}{k}" for k in range(start, terms + 1))
    R = PolyRing(base_ring.field, params + ("t",))
    s_ring = PolyRing(base_ring.field, ("s",))
    tt = R.gen("t")
    s = R.zero
    for k in range(start, terms + 1):
        s = s + R.gen(f"{param}{k}") * tt ** k
    out = {}
    for x, img in images.items():
        if isinstance(img, str):
            img = parse_polynomial(img, s_ring)
        out[x] = substitute(s_ring.convert(img), {"s": s})
    return Arc(base_ring, out, params, prec or 2 * terms + 2)


# -- projections and maps --


@dataclass
class LinearProjection:
    """``y_j = b_j + sum_i A[i][j] x_i``."""

    A: list
    b: list
    certificate: dict = None

    def __post_init__(self):
        if not self.A or len(self.b) != len(self.A[0]):
            raise InputError("projection needs an n x d matrix and d offsets")

    @property
    def d(self):
        return len(self.b)

    def rank(self, field):
        return linalg.rank([list(r) for r in self.A], field)

    def components(self, ring: PolyRing):
        out = []
        for j in range(self.d):
            f = ring.const(self.b[j])
            for i, x in enumerate(ring.gens()):
                if self.A[i][j]:
                    f = f + x.scale(ring.field.convert(self.A[i][j]))
            out.append(f)
        return out

    def target_arc(self, arc: Arc, names=None):
        names = names or tuple(f"y{j + 1}" for j in range(self.d))
        target = PolyRing(arc.field, names)
        imgs = {y: arc.substitute_exact(f) for y, f in zip(names, self.components(arc.base_ring))}
        return Arc(target, imgs, arc.params, arc.prec, arc.name)

    def to_json(self):
        return {"A": [[str(x) for x in r] for r in self.A], "b": [str(x) for x in self.b], "certificate": self.certificate}


def _arc_matrix(M: PolyMatrix, arc: Arc):
    return PolyMatrix(arc.ring, M.rows, M.cols, [[arc.substitute_exact(x) for x in r] for r in M.entries])


def generic_projection(gens, arc: Arc, seed=0, d=None, budget=64, coeff_range=3, profile=None) -> LinearProjection:
    """First seeded projection to ``A^d`` whose certificate verifies.

    Certificate: ``(J(alpha) | A)`` has full rank over the fraction field, and
    ``ord Fitt^d(Omega_X) = ord Fitt^0(Omega_{X/Y}) < infinity`` along the arc.
    """
    base = arc.base_ring
    gens = parse_many(gens, base)
    F = base.field
    nv = base.nvars
    if d is None:
        if profile is None and gens:
            profile = fiber_profile_auto(lci_cotangent_presentation(gens, base), arc)
        d = profile.b_at(0) if gens else nv
        if d != nv - len(gens):
            raise CertificateNotFound(
                f"b_0 = {d} differs from dim X = {nv - len(gens)}: the arc is degenerate"
            )
    if d <= 0 or d > nv:
        raise InputError(f"projection dimension {d} out of range")
    J = jacobian_matrix(gens, ring=base) if gens else PolyMatrix(base, nv, 0, [[] for _ in range(nv)])
    N = arc.prec
    ord_x = ord_along_arc(fitting_ideal(J, d), arc, N) if gens else Valuation(0)
    if not ord_x.exact:
        raise CertificateNotFound("Fitt^d(Omega_X) vanishes along the arc: no projection can be certified")
    rng = random.Random(seed)
    for attempt in range(1, budget + 1):
        A = [[rng.randint(-coeff_range, coeff_range) for _ in range(d)] for _ in range(nv)]
        b = [rng.randint(-coeff_range, coeff_range) for _ in range(d)]
        if linalg.rank(A, F) < d:
            continue
        JA = J.hstack(PolyMatrix(base, nv, d, [[base.const(x) for x in r] for r in A])) if gens else PolyMatrix(
            base, nv, d, [[base.const(x) for x in r] for r in A]
        )
        if rank_over_fraction_field(_arc_matrix(JA, arc)) < nv:
            continue
        ord_rel = ord_along_arc(minors_ideal(JA, nv), arc, N)
        if not (ord_rel.exact and ord_x.exact and ord_rel.order == ord_x.order):
            continue
        cert = {
            "attempt": attempt,
            "seed": seed,
            "full_rank": True,
            "ord_fitt_d_omega_x": ord_x.order,
            "ord_fitt_0_omega_x_over_y": ord_rel.order,
        }
        return LinearProjection(A, b, cert)
    raise CertificateNotFound(f"no certified projection in {budget} draws (seed {seed})")


def morphism_jacobian(source_gens, target_gens, mapping, source_ring: PolyRing, target_ring: PolyRing):
    """Maximal minors of ``(J_source | J_map)``: generators of ``Fitt^0(Omega_{X/Y})``.

    ``mapping`` lists the images of the target variables as polynomials on the source.
    """
    src = parse_many(source_gens, source_ring)
    comps = parse_many(mapping, source_ring)
    if len(comps) != target_ring.nvars:
        raise MapNotWellDefined(f"map has {len(comps)} components for {target_ring.nvars} target variables")
    if target_gens:
        images = {y: c for y, c in zip(target_ring.names, comps)}
        pulled = [substitute(g, images) for g in parse_many(target_gens, target_ring)]
        pulled = [source_ring.convert(p) for p in pulled]
        if src:
            gb = buchberger(src, ring=source_ring)
            bad = [str(p) for p in pulled if not gb.contains(p)]
        else:
            bad = [str(p) for p in pulled if p.terms]
        if bad:
            raise MapNotWellDefined(f"target equations do not pull back into the source ideal: {bad}")
    n = source_ring.nvars
    Jm = jacobian_matrix(comps, ring=source_ring)
    M = jacobian_matrix(src, ring=source_ring).hstack(Jm) if src else Jm
    return minors_ideal(M, n)


def etale_transform_check(source_gens, source_arc: Arc, target_gens, mapping, target_ring: PolyRing, window=DEFAULT_WINDOW, run=DEFAULT_RUN, jet_level_table=True):
    """Compare arc-level embedding dimensions at ``alpha`` and ``beta = f(alpha)``.

    The stable difference should lie in ``[0, ord Jac_f]`` and equal the order
    when the source is smooth.
    """
    src_ring = source_arc.base_ring
    source_gens = parse_many(source_gens, src_ring)
    target_gens = parse_many(target_gens, target_ring)
    mapping = parse_many(mapping, src_ring)
    jac_f = morphism_jacobian(source_gens, target_gens, mapping, src_ring, target_ring)
    ord_f = ord_along_arc(jac_f, source_arc, source_arc.prec)
    imgs = {y: source_arc.substitute_exact(c) for y, c in zip(target_ring.names, mapping)}
    beta = Arc(target_ring, imgs, source_arc.params, source_arc.prec, source_arc.name)
    src_vals = embdim_arc_window(source_gens, source_arc, window)
    tgt_vals = embdim_arc_window(target_gens, beta, window)
    rows = []
    for (n, a), (_, b) in zip(src_vals, tgt_vals):
        row = {"level": n, "source": a, "target": b, "difference": b - a}
        if jet_level_table:
            row["source_jet"] = embdim_jet_direct(source_gens, JetContext(src_ring, n), source_arc)
            row["target_jet"] = embdim_jet_direct(target_gens, JetContext(target_ring, n), beta)
        rows.append(row)
    diffs = [r["difference"] for r in rows]
    stable = stable_value(diffs, run)
    o = ord_f.order if ord_f.exact else None
    smooth = not source_gens or _smooth_at_origin(source_gens, source_arc, len(source_gens))
    return {
        "ord_jac_f": o,
        "jacobian_ideal": [str(g) for g in jac_f],
        "table": rows,
        "stable_difference": stable,
        "equals_ord": stable is not None and stable == o,
        "within_bound": o is not None and all(0 <= x <= o for x in diffs),
        "source_smooth": smooth,
    }
