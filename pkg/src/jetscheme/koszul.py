"""Koszul complexes, graded homology slices, and the classicality test for jets."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import linalg
from .errors import (
    BudgetExceeded,
    InhomogeneousForGrading,
    InputError,
    InternalInconsistency,
    NotExpectedCodim,
)
from .groebner import Budget, _weighted_monomials, buchberger, krull_dim
from .polynomials import GREVLEX, PolyMatrix, PolyRing

__all__ = [
    "FreeComplex",
    "koszul_complex",
    "graded_homology_rank",
    "slice_data",
    "jet_generator_degrees",
    "ClassicalityVerdict",
    "classicality_test",
]


@dataclass
class FreeComplex:
    """``F_0 <- F_1 <- ... <- F_c``; ``diffs[i-1]`` is the matrix of ``d_i``.

    ``degrees[i]`` lists the weighted degrees of the basis of ``F_i`` when the
    complex is graded (``weights`` then holds the variable weights).
    """

    ring: PolyRing
    diffs: list
    ranks: list
    degrees: list = None
    weights: tuple = None
    labels: list = None
    gens: list = dc_field(default=None, repr=False)

    def diff(self, i):
        """``d_i`` with explicit zero matrices outside the stored range."""
        if 1 <= i <= len(self.diffs):
            return self.diffs[i - 1]
        rows = self.rank(i - 1)
        cols = self.rank(i)
        return PolyMatrix.zeros(self.ring, rows, cols)

    def rank(self, i):
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    @property
    def length(self):
        return len(self.diffs)

    def check_square_zero(self):
        for i in range(1, len(self.diffs)):
            if not (self.diffs[i - 1] @ self.diffs[i]).is_zero():
                return False
        return True


def koszul_complex(f, ring=None, weights=None, zero_degrees=None) -> FreeComplex:
    """Exterior-algebra Koszul complex of the sequence ``f``.

    ``d(e_J) = sum_s (-1)^s f_{j_s} e_{J - j_s}`` with ``s`` counted from 0 and
    basis ``e_J`` over the ``i``-subsets ``J`` in lexicographic order.  With
    ``weights`` the complex is graded: nonzero ``f_j`` must be homogeneous, and
    zero entries take their degree from ``zero_degrees[j]``.
    """
    f = list(f)
    if not f:
        raise InputError("the Koszul complex needs at least one element")
    if ring is None:
        ring = f[0].ring
    f = [ring.convert(g) for g in f]
    c = len(f)
    degs = None
    if weights is not None:
        weights = tuple(weights)
        degs = []
        for j, g in enumerate(f):
            if g.terms:
                d = g.homogeneous_degree(weights)
                if d is None:
                    raise InhomogeneousForGrading(f"generator {j} ({g}) is not homogeneous for weights {weights}")
                degs.append(d)
            else:
                if zero_degrees is None or zero_degrees[j] is None:
                    raise InhomogeneousForGrading(f"generator {j} is zero and no degree was supplied")
                degs.append(int(zero_degrees[j]))
    bases = [list(combinations(range(c), i)) for i in range(c + 1)]
    index = [{J: k for k, J in enumerate(b)} for b in bases]
    diffs = []
    for i in range(1, c + 1):
        rows, cols = len(bases[i - 1]), len(bases[i])
        entries = [[ring.zero] * cols for _ in range(rows)]
        for col, J in enumerate(bases[i]):
            for s, j in enumerate(J):
                g = f[j]
                if g.terms:
                    row = index[i - 1][J[:s] + J[s + 1:]]
                    entries[row][col] = g if s % 2 == 0 else -g
        diffs.append(PolyMatrix(ring, rows, cols, entries))
    ranks = [len(b) for b in bases]
    degrees = None
    if degs is not None:
        degrees = [[sum(degs[j] for j in J) for J in b] for b in bases]
    K = FreeComplex(ring, diffs, ranks, degrees, weights, bases, f)
    if not K.check_square_zero():
        raise InternalInconsistency("Koszul differential does not square to zero")
    return K


def _slice_basis(K, i, degree, budget, cache):
    """Basis of the degree slice of ``F_i``: pairs ``(basis index, monomial)``."""
    key = (i, degree)
    if key in cache:
        return cache[key]
    out = []
    if 0 <= i < len(K.ranks):
        for b, db in enumerate(K.degrees[i]):
            k = degree - db
            if k < 0:
                continue
            mons = cache.get(("mon", k))
            if mons is None:
                mons = _weighted_monomials(K.weights, k, budget)
                cache[("mon", k)] = mons
            out.extend((b, m) for m in mons)
            if len(out) > budget.max_monomials:
                raise BudgetExceeded("graded slice too large")
    cache[key] = out
    return out


def _slice_matrix(K, i, degree, budget, cache):
    """Matrix of ``d_i`` from the degree slice of ``F_i`` to that of ``F_{i-1}``."""
    src = _slice_basis(K, i, degree, budget, cache)
    tgt = _slice_basis(K, i - 1, degree, budget, cache)
    if not src or not tgt or not (1 <= i <= len(K.diffs)):
        return src, tgt, []
    pos = {bm: k for k, bm in enumerate(tgt)}
    D = K.diffs[i - 1]
    F = K.ring.field
    rows = []  # one row per source element (transpose; rank is the same)
    for b, m in src:
        row = [0] * len(tgt)
        for r in range(D.rows):
            entry = D.entries[r][b]
            for e, c in entry.terms.items():
                mm = tuple(x + y for x, y in zip(e, m))
                k = pos[(r, mm)]
                row[k] = F.add(row[k], c)
        rows.append(row)
    return src, tgt, rows


def slice_data(K: FreeComplex, i: int, degree: int, budget: Budget = None):
    """``(dim F_i slice, rank d_i, rank d_{i+1})`` on the given degree slice."""
    if K.degrees is None:
        raise InputError("the complex is not graded")
    if any(w <= 0 for w in K.weights):
        raise InputError("slice computations need positive weights")
    budget = budget or Budget()
    cache = {}
    F = K.ring.field
    src, _, m_i = _slice_matrix(K, i, degree, budget, cache)
    _, _, m_next = _slice_matrix(K, i + 1, degree, budget, cache)
    rank_i = linalg.rank(m_i, F) if m_i else 0
    rank_next = linalg.rank(m_next, F) if m_next else 0
    return len(src), rank_i, rank_next


def graded_homology_rank(K: FreeComplex, i: int, degree: int, budget: Budget = None) -> int:
    dim, r_i, r_next = slice_data(K, i, degree, budget)
    return dim - r_i - r_next


def jet_generator_degrees(ji, grading="base"):
    """Degrees for each entry of a jet ideal: base degree of ``f_j``, or t-weight ``q``."""
    ctx = ji.ctx
    base = [None] * (max((j for j, _ in ji.labels), default=-1) + 1)
    out = []
    for (j, q), p in zip(ji.labels, ji):
        if grading in ("t", "t-weight"):
            out.append(q)
        else:
            if base[j] is None:
                f0 = ji[ji.labels.index((j, 0))]
                d = f0.homogeneous_degree(ctx.base_weights)
                if d is None:
                    raise InhomogeneousForGrading(f"generator {j} is not homogeneous for the base weights")
                base[j] = d
            out.append(base[j])
    return out


@dataclass
class ClassicalityVerdict:
    verdict: str  # "Classical" | "NonClassical" | "Inconclusive"
    level: int
    dim: object
    expected: int
    base_dim: int = None
    notes: list = dc_field(default_factory=list)

    def to_json(self):
        return {
            "level": self.level,
            "verdict": self.verdict,
            "dim": self.dim if self.dim is None or isinstance(self.dim, int) else str(self.dim),
            "expected": self.expected,
        }


def classicality_test(gens, ctx, codim=None, d=None, budget: Budget = None, order=GREVLEX) -> ClassicalityVerdict:
    """Classical iff the jet scheme has dimension ``(n+1) d`` (lci input)."""
    from .jets import jet_ideal

    gens = [ctx.base_ring.convert(g) for g in gens]
    c = len(gens) if codim is None else codim
    if d is None:
        d = ctx.base_ring.nvars - c
    n = ctx.n
    expected = (n + 1) * d
    if order.kind == "wgrevlex":
        base_order = order.__class__("wgrevlex", ctx.base_ring.vars.weights)
    else:
        base_order = order
    try:
        gb0 = buchberger(gens, base_order, ring=ctx.base_ring, budget=budget)
        d0 = krull_dim(gb0, budget)
    except BudgetExceeded as exc:
        return ClassicalityVerdict("Inconclusive", n, None, expected, None, [f"base ideal: {exc}"])
    if d0 != d:
        raise NotExpectedCodim(f"base ideal has dimension {d0}, expected {d}")
    ji = jet_ideal(gens, ctx)
    try:
        gb = buchberger(ji.nonzero(), order, ring=ctx.ring, budget=budget)
        dim = krull_dim(gb, budget)
    except BudgetExceeded as exc:
        return ClassicalityVerdict("Inconclusive", n, None, expected, d0, [str(exc)])
    if dim == expected:
        return ClassicalityVerdict("Classical", n, dim, expected, d0)
    if dim > expected:
        return ClassicalityVerdict("NonClassical", n, dim, expected, d0)
    raise InternalInconsistency(f"jet scheme dimension {dim} below the lci bound {expected}")
