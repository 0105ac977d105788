"""Buchberger's algorithm with the Gebauer-Moeller criteria.

Reduced bases, a deterministic normal selection strategy (smallest lcm degree,
then smallest pair ``(i, j)``), explicit budgets.  Krull dimension comes from
a minimum hitting set of the leading-monomial supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from heapq import heapify, heappop, heappush
from operator import add as _add, sub as _sub

try:  # fast rationals for the inner loops
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is optional
    _mpq = None

from .errors import BudgetExceeded, InputError, MixedContexts
from .polynomials import GREVLEX, MonomialOrder, Polynomial, PolyRing

__all__ = [
    "GroebnerBasis",
    "Budget",
    "buchberger",
    "normal_form",
    "krull_dim",
    "standard_monomial_count",
    "s_polynomial",
    "NEG_INFINITY",
]

NEG_INFINITY = float("-inf")


@dataclass
class Budget:
    """Caps on Buchberger work; exceeding one raises :class:`BudgetExceeded`."""

    max_pairs: int = 200_000
    max_degree: int = 200
    max_basis: int = 20_000
    max_dim_nodes: int = 2_000_000
    max_monomials: int = 2_000_000


_DEFAULT_BUDGET = Budget()


def _neg_key_fn(order: MonomialOrder, nvars):
    """Key whose *minimum* is the order's maximum (for a min-heap)."""
    if order.kind == "lex":
        return lambda e: tuple(-x for x in e)
    if order.kind == "grevlex":
        return lambda e: (-sum(e), e[::-1])
    w = order.weights
    return lambda e: (-sum(map(int.__mul__, e, w)), e[::-1])


class _Ctx:
    """Per-computation caches: order keys and support masks."""

    def __init__(self, ring: PolyRing, order: MonomialOrder):
        self.ring = ring
        self.field = ring.field
        self.order = order
        self.nk = _neg_key_fn(order, ring.nvars)
        self._nk = {}
        self._mask = {}
        if order.kind == "wgrevlex":
            w = order.weights
            self.deg = lambda e: sum(map(int.__mul__, e, w))
        else:
            self.deg = sum
        self.p = self.field.characteristic
        self.fast_q = self.p == 0 and _mpq is not None

    def inward(self, terms):
        if self.fast_q:
            return {e: _mpq(c.numerator, c.denominator) if type(c) is not int else _mpq(c) for e, c in terms.items()}
        return dict(terms)

    def outward(self, terms):
        if self.fast_q:
            out = {}
            for e, c in terms.items():
                num, den = int(c.numerator), int(c.denominator)
                out[e] = num if den == 1 else Fraction(num, den)
            return out
        return terms

    def inv(self, c):
        if self.fast_q:
            return 1 / c
        return self.field.inv(c)

    def mul(self, a, b):
        if self.p:
            return a * b % self.p
        if self.fast_q:
            return a * b
        return self.field.mul(a, b)

    def sub(self, a, b):
        if self.p:
            return (a - b) % self.p
        if self.fast_q:
            return a - b
        return self.field.sub(a, b)

    def negkey(self, e):
        k = self._nk.get(e)
        if k is None:
            k = self.nk(e)
            self._nk[e] = k
        return k

    def mask(self, e):
        m = self._mask.get(e)
        if m is None:
            m = 0
            for i, x in enumerate(e):
                if x:
                    m |= 1 << i
            self._mask[e] = m
        return m

    def lead(self, terms):
        return min(terms, key=self.negkey)


class _Poly:
    """Internal monic polynomial: dict plus cached leading monomial."""

    __slots__ = ("terms", "lm", "mask", "items")

    def __init__(self, terms, lm, mask):
        self.terms = terms
        self.lm = lm
        self.mask = mask
        self.items = None

    def tail_items(self):
        if self.items is None:
            lm = self.lm
            self.items = [(e, c) for e, c in self.terms.items() if e != lm]
        return self.items


def _make_monic(ctx, terms):
    if not terms:
        return None
    lm = ctx.lead(terms)
    c = terms[lm]
    if c != 1:
        inv = ctx.inv(c)
        mul = ctx.mul
        terms = {e: mul(v, inv) for e, v in terms.items()}
    return _Poly(terms, lm, ctx.mask(lm))


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _find_reducer(basis, e, emask):
    for g in basis:
        if g.mask & ~emask == 0 and _divides(g.lm, e):
            return g
    return None


def _reduce(ctx, terms, basis, full=True):
    """Normal form of ``terms`` (dict, consumed) modulo ``basis`` (monic _Polys)."""
    F = ctx.field
    p = F.characteristic
    negkey = ctx.negkey
    mask = ctx.mask
    heap = [(negkey(e), e) for e in terms]
    heapify(heap)
    result = {}
    while heap:
        _, e = heappop(heap)
        c = terms.pop(e, None)
        if c is None:
            continue
        g = _find_reducer(basis, e, mask(e))
        if g is None:
            result[e] = c
            if not full:
                # top-reduction only: the rest is copied verbatim
                result.update(terms)
                return result
            continue
        shift = tuple(map(_sub, e, g.lm))
        if p:
            for eg, cg in g.tail_items():
                m = tuple(map(_add, eg, shift))
                old = terms.get(m)
                if old is None:
                    terms[m] = (-c * cg) % p
                    heappush(heap, (negkey(m), m))
                else:
                    v = (old - c * cg) % p
                    if v:
                        terms[m] = v
                    else:
                        del terms[m]
        elif ctx.fast_q:
            for eg, cg in g.tail_items():
                m = tuple(map(_add, eg, shift))
                old = terms.get(m)
                if old is None:
                    terms[m] = -c * cg
                    heappush(heap, (negkey(m), m))
                else:
                    v = old - c * cg
                    if v:
                        terms[m] = v
                    else:
                        del terms[m]
        else:
            norm = F.norm
            for eg, cg in g.tail_items():
                m = tuple(map(_add, eg, shift))
                old = terms.get(m)
                if old is None:
                    terms[m] = norm(-c * cg)
                    heappush(heap, (negkey(m), m))
                else:
                    v = old - c * cg
                    if v:
                        terms[m] = norm(v)
                    else:
                        del terms[m]
    return result


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _spoly_terms(ctx, f: _Poly, g: _Poly):
    L = _lcm(f.lm, g.lm)
    sf = tuple(map(_sub, L, f.lm))
    sg = tuple(map(_sub, L, g.lm))
    sub = ctx.sub
    out = {}
    for e, c in f.tail_items():
        out[tuple(map(_add, e, sf))] = c
    for e, c in g.tail_items():
        m = tuple(map(_add, e, sg))
        v = sub(out.get(m, 0), c)
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis (monic, sorted by leading monomial, largest first)."""

    polys: list
    order: MonomialOrder
    ring: PolyRing
    gens: list = dc_field(default_factory=list, repr=False)
    stats: dict = dc_field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def is_unit(self):
        return any(p.is_constant() and p.terms for p in self.polys)

    def leading_monomials(self):
        return [p.leading_term(self.order)[0] for p in self.polys]

    def normal_form(self, f):
        return normal_form(f, self)

    def contains(self, f):
        return not normal_form(f, self).terms

    def krull_dim(self, budget=None):
        return krull_dim(self, budget)


def _internal_basis(gb: GroebnerBasis):
    cached = gb.stats.get("_internal")
    if cached is None:
        ctx = _Ctx(gb.ring, gb.order)
        cached = (ctx, [_make_monic(ctx, ctx.inward(p.terms)) for p in gb.polys])
        gb.stats["_internal"] = cached
    return cached


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    if f.ring != gb.ring:
        raise MixedContexts(f"{f.ring} vs {gb.ring}")
    ctx, basis = _internal_basis(gb)
    return Polynomial(gb.ring, ctx.outward(_reduce(ctx, ctx.inward(f.terms), basis)))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    ctx = _Ctx(f.ring, order)
    a = _make_monic(ctx, ctx.inward(f.terms))
    b = _make_monic(ctx, ctx.inward(g.terms))
    return Polynomial(f.ring, ctx.outward(_spoly_terms(ctx, a, b)))


def buchberger(gens, order: MonomialOrder = GREVLEX, ring: PolyRing = None, budget: Budget = None) -> GroebnerBasis:
    budget = budget or _DEFAULT_BUDGET
    gens = list(gens)
    if ring is None:
        if not gens:
            raise InputError("need a ring for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise MixedContexts(f"{g.ring} vs {ring}")
    if order.kind == "wgrevlex" and len(order.weights) != ring.nvars:
        raise InputError("order weights do not match the ring")
    ctx = _Ctx(ring, order)
    deg = ctx.deg

    G = []  # list of _Poly (all ever added, for pair indices)
    live = []  # indices whose lm is not divisible by a later lm
    pairs = {}  # (i, j) -> lcm
    stats = {"pairs_considered": 0, "reductions_to_zero": 0, "product_skipped": 0, "chain_skipped": 0}

    def add(h: _Poly):
        t = len(G)
        G.append(h)
        lm_h = h.lm
        # old pairs killed by the chain criterion
        for (i, j), L in list(pairs.items()):
            if _divides(lm_h, L):
                if _lcm(G[i].lm, lm_h) != L and _lcm(G[j].lm, lm_h) != L:
                    del pairs[(i, j)]
                    stats["chain_skipped"] += 1
        new = []
        for i in live:
            L = _lcm(G[i].lm, lm_h)
            coprime = G[i].mask & h.mask == 0
            new.append((i, L, coprime))
        # keep pairs whose lcm is minimal among new pairs
        kept = []
        lcms = [L for _, L, _ in new]
        for i, L, coprime in new:
            dominated = False
            for L2 in lcms:
                if L2 != L and _divides(L2, L):
                    dominated = True
                    break
            if dominated:
                stats["chain_skipped"] += 1
                continue
            kept.append((i, L, coprime))
        by_lcm = {}
        for i, L, coprime in kept:
            by_lcm.setdefault(L, []).append((i, coprime))
        for L, group in by_lcm.items():
            if any(cp for _, cp in group):
                stats["product_skipped"] += len(group)
                continue
            i = min(i for i, _ in group)
            stats["chain_skipped"] += len(group) - 1
            pairs[(i, t)] = L
        # prune live set
        live[:] = [i for i in live if not _divides(lm_h, G[i].lm)]
        live.append(t)
        if len(G) > budget.max_basis:
            raise BudgetExceeded(f"basis grew beyond {budget.max_basis} elements")

    # seed with interreduced-by-insertion generators, in input order
    for g in gens:
        if not g.terms:
            continue
        r = _reduce(ctx, ctx.inward(g.terms), [G[i] for i in live])
        h = _make_monic(ctx, r)
        if h is None:
            continue
        if not any(h.lm):
            return _finish_unit(ring, order, gens, stats)
        add(h)

    while pairs:
        # normal strategy: min lcm degree, then pair index
        (i, j), L = min(pairs.items(), key=lambda kv: (deg(kv[1]), kv[0]))
        del pairs[(i, j)]
        stats["pairs_considered"] += 1
        if stats["pairs_considered"] > budget.max_pairs:
            raise BudgetExceeded(f"more than {budget.max_pairs} S-pairs")
        if deg(L) > budget.max_degree:
            raise BudgetExceeded(f"S-pair degree {deg(L)} above cap {budget.max_degree}")
        s = _spoly_terms(ctx, G[i], G[j])
        r = _reduce(ctx, s, [G[k] for k in live])
        if not r:
            stats["reductions_to_zero"] += 1
            continue
        h = _make_monic(ctx, r)
        if not any(h.lm):
            return _finish_unit(ring, order, gens, stats)
        add(h)

    # minimal basis then tail reduction
    cand = [G[i] for i in live]
    cand.sort(key=lambda g: ctx.negkey(g.lm))
    minimal = []
    for g in cand:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        tail = dict(g.tail_items())
        rt = _reduce(ctx, tail, others)
        rt[g.lm] = 1
        reduced.append(Polynomial(ring, ctx.outward(rt)))
    reduced.sort(key=lambda p: ctx.negkey(min(p.terms, key=ctx.negkey)))
    stats["basis_size"] = len(reduced)
    return GroebnerBasis(reduced, order, ring, gens, stats)


def _finish_unit(ring, order, gens, stats):
    stats["basis_size"] = 1
    return GroebnerBasis([ring.one], order, ring, gens, stats)


def krull_dim(gb: GroebnerBasis, budget: Budget = None):
    """``nvars`` minus a minimum hitting set of the leading-monomial supports.

    The unit ideal has dimension ``-inf`` (returned as ``NEG_INFINITY``).
    """
    budget = budget or _DEFAULT_BUDGET
    if gb.is_unit():
        return NEG_INFINITY
    n = gb.ring.nvars
    supports = set()
    for e in gb.leading_monomials():
        s = 0
        for i, x in enumerate(e):
            if x:
                s |= 1 << i
        supports.add(s)
    # keep inclusion-minimal supports only
    sups = sorted(supports, key=lambda s: (bin(s).count("1"), s))
    minimal = []
    for s in sups:
        if not any(m & s == m for m in minimal):
            minimal.append(s)
    return n - _min_hitting_set(minimal, budget)


def _min_hitting_set(sets, budget):
    if not sets:
        return 0
    best = [len(sets)]  # picking one element per set always works
    nodes = [0]

    def search(remaining, chosen):
        nodes[0] += 1
        if nodes[0] > budget.max_dim_nodes:
            raise BudgetExceeded("dimension search exceeded its node budget")
        if not remaining:
            if chosen < best[0]:
                best[0] = chosen
            return
        if chosen + _lower_bound(remaining) >= best[0]:
            return
        pick = min(remaining, key=lambda s: (bin(s).count("1"), s))
        bits = pick
        while bits:
            low = bits & -bits
            bits ^= low
            search([s for s in remaining if not s & low], chosen + 1)

    search(list(sets), 0)
    return best[0]


def _lower_bound(sets):
    """Greedy disjoint packing: each disjoint set needs its own element."""
    used = 0
    count = 0
    for s in sorted(sets, key=lambda s: bin(s).count("1")):
        if not s & used:
            used |= s
            count += 1
    return count


def _weighted_monomials(weights, degree, budget):
    """All exponent vectors of the given weighted degree (lexicographic)."""
    n = len(weights)
    out = []
    exp = [0] * n

    def rec(i, rem):
        if len(out) > budget.max_monomials:
            raise BudgetExceeded("too many monomials in a graded slice")
        if i == n - 1:
            w = weights[i]
            if rem % w == 0:
                exp[i] = rem // w
                out.append(tuple(exp))
                exp[i] = 0
            return
        w = weights[i]
        for k in range(rem // w, -1, -1):
            exp[i] = k
            rec(i + 1, rem - k * w)
        exp[i] = 0

    if degree < 0:
        return []
    if n == 0:
        return [()] if degree == 0 else []
    rec(0, degree)
    return out


def standard_monomial_count(gb: GroebnerBasis, weights, degree, budget: Budget = None) -> int:
    budget = budget or _DEFAULT_BUDGET
    weights = tuple(weights)
    if any(w <= 0 for w in weights):
        raise InputError("weights must be positive")
    if gb.is_unit():
        return 0
    lms = gb.leading_monomials()
    count = 0
    for e in _weighted_monomials(weights, degree, budget):
        if not any(_divides(m, e) for m in lms):
            count += 1
    return count
