"""Arcs, pull-backs of free complexes along them, and fiber profiles.

An arc is stored exactly: each base variable maps to a polynomial in
``k[u_1..u_r, t]``.  Truncated series views at any precision are derived from
that, and fraction-field ranks are taken on the exact matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import ArcNotOnVariety, InputError, PrecisionExhausted
from .koszul import FreeComplex
from .polynomials import PolyMatrix, PolyRing, jacobian_matrix, rank_over_fraction_field, substitute
from .results import Certified
from .series import TruncSeries, smith_normal_form

__all__ = [
    "Arc",
    "FiberProfile",
    "lci_cotangent_presentation",
    "pull_back",
    "pull_back_exact",
    "fiber_profile",
    "fiber_profile_auto",
    "jet_profile",
    "jet_fiber_dims",
    "arc_fiber_homotopy",
    "truncation_kernel_cokernel",
    "truncation_model",
    "truncation_model_from_profile",
]


class Arc:
    """``x_i -> alpha_i(u, t)`` with ``alpha_i`` polynomial in ``t`` and the parameters."""

    def __init__(self, base_ring: PolyRing, images: dict, params=(), prec: int = 16, name: str = None):
        self.base_ring = base_ring
        self.field = base_ring.field
        self.params = tuple(params)
        if "t" in self.params or "t" in base_ring.names:
            raise InputError("'t' is reserved for the arc parameter")
        self.ring = PolyRing(self.field, self.params + ("t",))
        self.param_ring = PolyRing(self.field, self.params) if self.params else None
        self.domain = self.param_ring if self.params else self.field
        self.prec = prec
        self.name = name
        missing = [x for x in base_ring.names if x not in images]
        if missing:
            raise InputError(f"arc does not map {missing}")
        from .parser import parse_polynomial

        self.images = {x: parse_polynomial(images[x], self.ring) for x in base_ring.names}
        self._tpos = self.ring.nvars - 1

    # -- views --
    def coefficient(self, x, q):
        """Coefficient of ``t^q`` in ``alpha(x)`` as an element of the coefficient domain."""
        return self._coeffs(self.images[x], q + 1)[q]

    def _coeffs(self, poly, n):
        tp = self._tpos
        if self.param_ring is None:
            out = [0] * n
            for e, c in poly.terms.items():
                if e[tp] < n:
                    out[e[tp]] = c
            return out
        buckets = [dict() for _ in range(n)]
        for e, c in poly.terms.items():
            if e[tp] < n:
                buckets[e[tp]][e[:tp]] = c
        from .polynomials import Polynomial

        return [Polynomial(self.param_ring, b) for b in buckets]

    def series(self, x, prec=None):
        N = prec or self.prec
        return TruncSeries(self.domain, self._coeffs(self.images[x], N), N)

    def series_of(self, poly, prec=None):
        """``f(alpha)`` as a truncated series (``poly`` in the arc's ring ``k[u, t]``)."""
        N = prec or self.prec
        return TruncSeries(self.domain, self._coeffs(poly, N), N)

    def substitute_exact(self, f):
        f = self.base_ring.convert(f)
        if not f.terms:
            return self.ring.zero
        return substitute(f, self.images)

    def substitute_series(self, f, prec=None):
        return self.series_of(self.substitute_exact(f), prec)

    def truncation(self, n):
        """``alpha_n``: drop every ``t^q`` with ``q > n``."""
        tp = self._tpos
        imgs = {}
        for x, p in self.images.items():
            imgs[x] = p.__class__(self.ring, {e: c for e, c in p.terms.items() if e[tp] <= n})
        return Arc(self.base_ring, imgs, self.params, self.prec, self.name)

    def jet_values(self, ctx):
        """Values of the jet variables ``x@q`` (q <= n) at ``alpha_n``, in ``ctx.ring`` order."""
        vals = []
        for q in range(ctx.n + 1):
            for x in self.base_ring.names:
                vals.append(self.coefficient(x, q))
        return vals

    def coefficient_polys(self, n):
        """All coefficients of order <= n, as polynomials in the parameters."""
        out = []
        for x in self.base_ring.names:
            out.extend(self._coeffs(self.images[x], n + 1))
        return out

    def check_on(self, gens, prec=None):
        N = prec or self.prec
        for g in gens:
            s = self.substitute_series(g, N)
            if not s.is_zero():
                raise ArcNotOnVariety(f"{g} does not vanish along the arc modulo t^{N} (got {s})")

    def is_on(self, gens):
        """Exact check: every generator vanishes identically along the arc."""
        return all(not self.substitute_exact(g).terms for g in gens)

    def order(self, x):
        """``t``-order of ``alpha(x)`` (``None`` for zero)."""
        p = self.images[x]
        if not p.terms:
            return None
        return min(e[self._tpos] for e in p.terms)

    def with_prec(self, N):
        return Arc(self.base_ring, self.images, self.params, N, self.name)

    def to_json(self):
        return {
            "name": self.name,
            "params": list(self.params),
            "images": {x: str(p) for x, p in self.images.items()},
            "precision": self.prec,
        }

    def __repr__(self):
        body = ", ".join(f"{x} -> {p}" for x, p in self.images.items())
        return f"Arc({body})"


def lci_cotangent_presentation(gens, ring=None) -> FreeComplex:
    """Two-term complex ``F_1 -> F_0``: generators in degree 1, ``dx_i`` in degree 0."""
    gens = list(gens)
    if not gens:
        raise InputError("need at least one generator")
    ring = ring or gens[0].ring
    J = jacobian_matrix(gens, ring=ring)
    return FreeComplex(ring, [J], [ring.nvars, len(gens)], gens=gens)


def _check_gens(K, arc, N):
    gens = K.gens or []
    arc.check_on(gens, N)


def pull_back_exact(K: FreeComplex, arc: Arc):
    """``d_i(alpha)`` as exact matrices over ``k[u, t]`` for ``i = 1..length``."""
    out = []
    for D in K.diffs:
        out.append(PolyMatrix(arc.ring, D.rows, D.cols, [[arc.substitute_exact(x) for x in r] for r in D.entries]))
    return out


def pull_back(K: FreeComplex, arc: Arc, prec=None):
    """Series matrices of ``d_i(alpha)`` modulo ``t^N``; checks the arc lies on ``V(gens)``."""
    N = prec or arc.prec
    _check_gens(K, arc, N)
    return [[[arc.series_of(x, N) for x in r] for r in M.entries] for M in pull_back_exact(K, arc)]


@dataclass
class FiberProfile:
    """Per index ``i``: Betti number ``b_i``, torsion count ``c_i`` and factors ``a_{i,j}``.

    ``a[i]`` are the invariant exponents of ``d_{i+1}(alpha)``, so that
    ``r_i = b_i + c_i + c_{i-1}``.
    """

    b: list
    c: list
    a: list
    r: list
    precision: int
    certified: bool = True
    notes: list = dc_field(default_factory=list)

    def c_at(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def a_at(self, i):
        return self.a[i] if 0 <= i < len(self.a) else ()

    def b_at(self, i):
        return self.b[i] if 0 <= i < len(self.b) else 0

    def r_at(self, i):
        return self.r[i] if 0 <= i < len(self.r) else 0

    def check_ranks(self):
        return all(self.r[i] == self.b[i] + self.c_at(i) + self.c_at(i - 1) for i in range(len(self.r)))

    def to_json(self):
        return {
            "betti": list(self.b),
            "torsion_counts": list(self.c),
            "invariant_factors": [list(x) for x in self.a],
            "ranks": list(self.r),
            "precision": self.precision,
            "certified": self.certified,
        }


def fiber_profile(K: FreeComplex, arc: Arc, prec=None) -> FiberProfile:
    N = prec or arc.prec
    _check_gens(K, arc, N)
    exact = pull_back_exact(K, arc)
    L = len(K.ranks)
    cs, as_ = [], []
    for i in range(L):
        if i < len(exact):
            M = exact[i]
            c = rank_over_fraction_field(M) if M.rows and M.cols else 0
            if c:
                S = smith_normal_form([[arc.series_of(x, N) for x in r] for r in M.entries], N, track=False)
                if S.rank < c:
                    raise PrecisionExhausted(
                        f"only {S.rank} of {c} invariant factors of d_{i + 1} visible at precision {N}"
                    )
                a = S.exponents
            else:
                a = ()
        else:
            c, a = 0, ()
        cs.append(c)
        as_.append(tuple(a))
    bs = [K.ranks[i] - cs[i] - (cs[i - 1] if i > 0 else 0) for i in range(L)]
    p = FiberProfile(bs, cs, as_, list(K.ranks), N)
    if not p.check_ranks() or any(b < 0 for b in bs):
        raise AssertionError("rank identity violated")
    return p


def fiber_profile_auto(K: FreeComplex, arc: Arc, prec=None, max_prec=256):
    """Retry with doubled precision while the profile is not certified."""
    N = prec or arc.prec
    while True:
        try:
            return fiber_profile(K, arc, N)
        except PrecisionExhausted:
            if N * 2 > max_prec:
                raise
            N *= 2


def jet_profile(p: FiberProfile, n: int) -> FiberProfile:
    """Profile of ``alpha_n``: every factor becomes ``min(a, n + 1)``."""
    a = [tuple(min(x, n + 1) for x in row) for row in p.a]
    notes = []
    if any(x > n for row in p.a for x in row):
        notes.append(f"factors above {n} are truncated to {n + 1}")
    return FiberProfile(list(p.b), list(p.c), a, list(p.r), p.precision, p.certified, notes)


def _csi_full(p, i):
    """Order of the level ``(i, b_i)`` support ideal: all factors at ``i`` and ``i - 1``."""
    return sum(p.a_at(i)) + sum(p.a_at(i - 1))


def jet_fiber_dims(p: FiberProfile, n: int, i: int) -> Certified:
    """``(n+1) b_i + sum_j a_{i,j} + sum_j a_{i-1,j}``, certified when ``n`` clears the threshold."""
    value = (n + 1) * p.b_at(i) + sum(p.a_at(i)) + sum(p.a_at(i - 1))
    need = _csi_full(p, i)
    notes = []
    ok = p.certified and n >= need
    if n < need:
        notes.append(f"needs n >= ord Jac^({i},{p.b_at(i)}) = {need}")
    return Certified(value, ok, notes)


def arc_fiber_homotopy(p: FiberProfile, i: int) -> dict:
    """Free rank and torsion exponents of the ``i``-th homotopy of the arc-space fiber."""
    return {"free_rank": p.b_at(i), "torsion": list(p.a_at(i - 1))}


def truncation_kernel_cokernel(p: FiberProfile, n: int, m: int, i: int):
    if m < n:
        raise InputError("truncation needs m >= n")
    s = sum(p.a_at(i))
    kernel = s
    coker = (m - n) * p.b_at(i) + s
    notes = []
    need_m = n + _csi_full(p, i)
    need_n = max(_csi_full(p, j) for j in range(i + 1))
    ok = p.certified
    if m < need_m:
        ok = False
        notes.append(f"needs m >= n + ord Jac^({i},{p.b_at(i)}) = {need_m}")
    if n < need_n:
        ok = False
        notes.append(f"needs n >= {need_n}")
    return Certified(kernel, ok, list(notes)), Certified(coker, ok, list(notes))


# -- the explicit truncation map, by linear algebra over k --


def _k_matrix(entries, level):
    """k-linear matrix of a k[t]/(t^{L+1}) module map given by coefficient lists.

    ``entries[r][c]`` is the coefficient list of the (r, c) entry; rows of the
    result index the source basis ``(c, p)``, columns the target ``(r, p)``.
    """
    L1 = level + 1
    nrows = len(entries)
    ncols = len(entries[0]) if nrows else 0
    out = []
    for c in range(ncols):
        for pw in range(L1):
            row = [0] * (nrows * L1)
            for r in range(nrows):
                for s, coef in enumerate(entries[r][c]):
                    if coef and pw + s < L1:
                        row[r * L1 + pw + s] = coef
            out.append(row)
    return out


def _homology_map_dims(diffs, ranks, n, m, i, field):
    """Kernel and cokernel dimensions of ``H_i(C/t^{n+1}) -> H_i(C/t^{m+1})`` under ``t^{m-n}``."""

    def d_mat(j, level):
        if 1 <= j <= len(diffs):
            return _k_matrix(diffs[j - 1], level)
        return []

    def dim_c(j, level):
        return (ranks[j] if 0 <= j < len(ranks) else 0) * (level + 1)

    def rk(rows):
        return linalg.rank(rows, field) if rows and rows[0] else 0

    # cycles at level n
    Dn = d_mat(i, n)
    size_n = dim_c(i, n)
    if Dn:
        Zn = linalg.nullspace([list(col) for col in zip(*Dn)], field, ncols=size_n) if Dn[0] else [
            [1 if a == b else 0 for a in range(size_n)] for b in range(size_n)
        ]
    else:
        Zn = [[1 if a == b else 0 for a in range(size_n)] for b in range(size_n)]
    Bn = d_mat(i + 1, n)
    Bm = d_mat(i + 1, m)
    Dm = d_mat(i, m)
    size_m = dim_c(i, m)
    h_n = len(Zn) - rk(Bn)
    z_m = size_m - rk(Dm)
    h_m = z_m - rk(Bm)
    # push cycles forward: coordinate (g, p) -> (g, p + m - n)
    shift = m - n
    n1, m1 = n + 1, m + 1
    pushed = []
    for z in Zn:
        v = [0] * size_m
        for idx, coef in enumerate(z):
            if coef:
                g, pw = divmod(idx, n1)
                v[g * m1 + pw + shift] = coef
        pushed.append(v)
    image = rk(pushed + Bm) - rk(Bm)
    return h_n - image, h_m - image


def truncation_model(K: FreeComplex, arc: Arc, n: int, m: int, i: int):
    """Kernel/cokernel of the truncation map computed on the pulled-back complex itself."""
    if arc.params:
        raise InputError("the explicit truncation model needs an arc with field coefficients")
    N = m + 1
    mats = pull_back(K, arc, N)
    diffs = [[[s.coeffs for s in r] for r in M] for M in mats]
    return _homology_map_dims(diffs, K.ranks, n, m, i, arc.field)


def truncation_model_from_profile(p: FiberProfile, n: int, m: int, i: int, field):
    """Same map on the decomposed complex ``free + sum k[[t]] --t^a--> k[[t]]`` built from ``p``."""
    L = len(p.r)
    # F_j = B_j (b_j) + S_j (c_{j-1}) + T_j (c_j); d_j maps S_j onto T_{j-1} by t^a
    offsets = []
    for j in range(L):
        offsets.append((p.b_at(j), p.b_at(j) + p.c_at(j - 1)))
    diffs = []
    N = m + 1
    for j in range(1, L):
        rows, cols = p.r[j - 1], p.r[j]
        ent = [[[] for _ in range(cols)] for _ in range(rows)]
        for k, a in enumerate(p.a_at(j - 1)):
            col = offsets[j][0] + k
            row = offsets[j - 1][1] + k
            coeffs = [0] * N
            if a < N:
                coeffs[a] = 1
            ent[row][col] = coeffs
        diffs.append(ent)
    return _homology_map_dims(diffs, p.r, n, m, i, field)
