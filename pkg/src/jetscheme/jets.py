"""Jet variables and Hasse-Schmidt derivatives.

``hasse_schmidt`` expands ``f(x + x@1 t + ... + x@n t^n)`` modulo ``t^(n+1)``;
``hasse_schmidt_leibniz`` rebuilds the same list from the additivity and
convolution rules alone and is kept as an independent cross-check.
"""

from __future__ import annotations

from .errors import InputError, JetVariableInInput
from .polynomials import PolyRing, Polynomial, VarTable, substitute
from .series import TruncSeries

__all__ = [
    "JetContext",
    "jet_name",
    "parse_jet_name",
    "hasse_schmidt",
    "hasse_schmidt_leibniz",
    "jet_ideal",
    "JetIdeal",
    "first_jet_sym_presentation_check",
]


def jet_name(base, q):
    return base if q == 0 else f"{base}@{q}"


def parse_jet_name(name):
    """``"x@3" -> ("x", 3)``, ``"x" -> ("x", 0)``."""
    if "@" in name:
        base, q = name.split("@", 1)
        return base, int(q)
    return name, 0


class JetContext:
    """Variables ``x_i@q`` for ``0 <= q <= n``, ordered level by level."""

    def __init__(self, base_ring: PolyRing, n: int):
        if n < 0:
            raise InputError("jet level must be nonnegative")
        for name in base_ring.names:
            if "@" in name:
                raise JetVariableInInput(f"base variable {name!r} is already a jet variable")
        self.base_ring = base_ring
        self.n = n
        self.field = base_ring.field
        base = base_ring.names
        names = tuple(jet_name(x, q) for q in range(n + 1) for x in base)
        bw = base_ring.vars.weights
        self.base_weights = tuple(w for q in range(n + 1) for w in bw)
        self.t_weights = tuple(q for q in range(n + 1) for _ in base)
        self.ring = PolyRing(self.field, VarTable(names, self.base_weights))

    @property
    def d(self):
        return self.base_ring.nvars

    @property
    def nvars(self):
        return self.ring.nvars

    def var(self, base, q):
        return self.ring.gen(jet_name(base, q))

    def index(self, base, q):
        return q * self.d + self.base_ring.vars.index(base)

    def lift(self, f: Polynomial) -> Polynomial:
        """View a base polynomial in the jet ring (``x`` is ``x@0``)."""
        if f.ring == self.ring:
            return f
        return f.change_ring(self.ring)

    def truncate_to(self, n):
        return JetContext(self.base_ring, n)

    def weights(self, kind):
        if kind in ("base", "base-weight"):
            return self.base_weights
        if kind in ("t", "t-weight"):
            return self.t_weights
        raise InputError(f"unknown jet grading {kind!r}")

    def __repr__(self):
        return f"JetContext({list(self.base_ring.names)}, n={self.n})"


def _as_base(f: Polynomial, ctx: JetContext) -> Polynomial:
    if isinstance(f, str):
        return ctx.base_ring.convert(f)
    if f.ring == ctx.base_ring:
        return f
    names = f.ring.names
    for e in f.terms:
        for name, k in zip(names, e):
            if k and parse_jet_name(name)[1] >= 1:
                raise JetVariableInInput(f"{name} appears in a base polynomial")
    renamed = PolyRing(f.ring.field, tuple(parse_jet_name(nm)[0] if parse_jet_name(nm)[1] == 0 else nm for nm in names))
    g = Polynomial(renamed, f.terms)
    try:
        return g.change_ring(ctx.base_ring)
    except Exception as exc:
        raise JetVariableInInput(str(exc)) from None


def hasse_schmidt(f: Polynomial, ctx: JetContext):
    """``[f^(0), ..., f^(n)]`` in the jet ring, by the universal substitution."""
    f = _as_base(f, ctx)
    ring = ctx.ring
    N = ctx.n + 1
    mapping = {}
    for x in ctx.base_ring.names:
        mapping[x] = TruncSeries(ring, [ctx.var(x, q) for q in range(N)], N)
    if not f.terms:
        return [ring.zero for _ in range(N)]
    s = substitute(f, mapping)
    return list(s.coeffs)


def hasse_schmidt_leibniz(f: Polynomial, ctx: JetContext):
    """Same output as :func:`hasse_schmidt`, built only from the HS rules.

    ``c^(q) = 0`` for constants and ``q >= 1``, ``x^(q) = x@q``, additivity, and
    ``(gh)^(q) = sum_{u+v=q} g^(u) h^(v)`` applied one variable at a time.
    """
    f = _as_base(f, ctx)
    ring = ctx.ring
    n = ctx.n
    zero = ring.zero
    base = ctx.base_ring.names
    memo = {}

    def mono(exp):
        if exp in memo:
            return memo[exp]
        i = next((k for k, e in enumerate(exp) if e), None)
        if i is None:
            out = [ring.one] + [zero] * n
        else:
            rest = list(exp)
            rest[i] -= 1
            g = mono(tuple(rest))
            h = [ctx.var(base[i], q) for q in range(n + 1)]
            out = []
            for q in range(n + 1):
                acc = zero
                for u in range(q + 1):
                    if g[u].terms:
                        acc = acc + g[u] * h[q - u]
                out.append(acc)
        memo[exp] = out
        return out

    total = [zero] * (n + 1)
    for exp, c in f.terms.items():
        seq = mono(exp)
        total = [a + b.scale(c) for a, b in zip(total, seq)]
    return total


class JetIdeal(list):
    """The list ``f_j^(q)`` (``j`` outer, ``q`` inner) with bookkeeping.

    ``labels[k] = (j, q)``; ``zero_mask[k]`` is true for vanishing entries,
    which are kept because they matter for the derived quotient.
    """

    def __init__(self, polys, labels, ctx):
        super().__init__(polys)
        self.labels = list(labels)
        self.zero_mask = [not p.terms for p in polys]
        self.ctx = ctx

    def nonzero(self):
        return [p for p in self if p.terms]


def jet_ideal(gens, ctx: JetContext, route="substitution") -> JetIdeal:
    fn = hasse_schmidt if route == "substitution" else hasse_schmidt_leibniz
    polys, labels = [], []
    for j, g in enumerate(gens):
        for q, h in enumerate(fn(g, ctx)):
            polys.append(h)
            labels.append((j, q))
    return JetIdeal(polys, labels, ctx)


def first_jet_sym_presentation_check(gens, ctx: JetContext) -> bool:
    """``f^(1) == sum_i (df/dx_i) x_i@1`` for every generator (level 1 only)."""
    if ctx.n != 1:
        raise InputError("the first-jet check needs a level-1 context")
    for g in gens:
        g = _as_base(g, ctx)
        f1 = hasse_schmidt(g, ctx)[1]
        rhs = ctx.ring.zero
        for x in ctx.base_ring.names:
            rhs = rhs + ctx.lift(g.diff(x)) * ctx.var(x, 1)
        if f1 != rhs:
            return False
    return True
