"""Sparse multivariate polynomials over QQ or GF(p), and matrices of them.

A :class:`Polynomial` is a dict from exponent tuples to nonzero raw field
values.  Rings are cheap value objects compared by field and variable names;
weights are carried by the :class:`VarTable` but do not affect compatibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from numbers import Number as _Number
from operator import add as _add
import random

from .errors import InputError, MixedContexts, UnmappedVariable
from .fields import QQ, Field

__all__ = [
    "VarTable",
    "PolyRing",
    "Polynomial",
    "PolyMatrix",
    "MonomialOrder",
    "GREVLEX",
    "LEX",
    "substitute",
    "jacobian_matrix",
    "minors_ideal",
    "rank_over_fraction_field",
]


@dataclass(frozen=True)
class VarTable:
    names: tuple
    weights: tuple = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        weights = self.weights
        if weights is None:
            weights = (1,) * len(names)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(names) or any(w <= 0 for w in weights):
            raise InputError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.names)

    def index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise UnmappedVariable(f"unknown variable {name!r}") from None

    def with_weights(self, weights):
        return VarTable(self.names, tuple(weights))


class MonomialOrder:
    """grevlex, lex, or weighted grevlex (weighted degree, then grevlex tie-break)."""

    def __init__(self, kind="grevlex", weights=None):
        if kind not in ("grevlex", "lex", "wgrevlex"):
            raise InputError(f"unknown monomial order {kind!r}")
        if kind == "wgrevlex" and weights is None:
            raise InputError("weighted grevlex needs weights")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None

    def key(self, exp):
        if self.kind == "lex":
            return exp
        rev = tuple(-e for e in reversed(exp))
        if self.kind == "grevlex":
            return (sum(exp), rev)
        return (sum(map(int.__mul__, exp, self.weights)), rev)

    def degree(self, exp):
        if self.kind == "wgrevlex":
            return sum(map(int.__mul__, exp, self.weights))
        return sum(exp)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self):
        return hash((self.kind, self.weights))

    def __repr__(self):
        if self.kind == "wgrevlex":
            return f"MonomialOrder('wgrevlex', {self.weights})"
        return f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


class PolyRing:
    """k[x_1..x_n]; also serves as a coefficient *domain* for series with parameters."""

    is_field = False

    def __init__(self, field: Field, variables):
        self.field = field
        self.vars = variables if isinstance(variables, VarTable) else VarTable(tuple(variables))
        self.nvars = len(self.vars)
        self._zero_exp = (0,) * self.nvars

    # ring identity ignores weights on purpose
    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.vars.names == other.vars.names
        )

    def __hash__(self):
        return hash((self.field, self.vars.names))

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.vars.names)})"

    @property
    def names(self):
        return self.vars.names

    @property
    def zero(self):
        return Polynomial(self, {})

    @property
    def one(self):
        return Polynomial(self, {self._zero_exp: self.field.one})

    def gen(self, name):
        i = self.vars.index(name)
        exp = [0] * self.nvars
        exp[i] = 1
        return Polynomial(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.gen(n) for n in self.vars.names]

    def const(self, c):
        c = self.field.convert(c)
        return Polynomial(self, {self._zero_exp: c} if c != 0 else {})

    def monomial(self, exp, coeff=1):
        c = self.field.convert(coeff)
        return Polynomial(self, {tuple(exp): c} if c != 0 else {})

    def __call__(self, value):
        return self.convert(value)

    def convert(self, value):
        if isinstance(value, Polynomial):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            from .parser import parse_polynomial

            return parse_polynomial(value, self)
        return self.const(value)

    # -- domain protocol (used by series with polynomial coefficients) --
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return not a.terms

    def render(self, a):
        s = str(a)
        return s if len(a.terms) <= 1 else f"({s})"

    def random_element(self, rng: random.Random, nterms=3, degree=3):
        return random_polynomial(self, rng, nterms=nterms, degree=degree)


def _coerce_pair(a, b):
    if isinstance(b, Polynomial):
        if b.ring != a.ring:
            raise MixedContexts(f"{a.ring} vs {b.ring}")
        return b
    return a.ring.const(b)


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring, terms):
        """Build from an iterable of ``(exp, coeff)`` pairs, normalising and merging."""
        field = ring.field
        acc = {}
        for exp, c in terms:
            exp = tuple(exp)
            acc[exp] = acc.get(exp, 0) + c
        return cls(ring, _clean(field, acc))

    # -- basic queries --
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring._zero_exp, 0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, weights=None):
        w = weights if weights is not None else self.ring.vars.weights
        return max((sum(map(int.__mul__, e, w)) for e in self.terms), default=-1)

    def homogeneous_degree(self, weights=None):
        """Weighted degree if homogeneous, ``None`` otherwise (and for zero)."""
        w = weights if weights is not None else self.ring.vars.weights
        degs = {sum(map(int.__mul__, e, w)) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def variables_used(self):
        used = [False] * self.ring.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [n for n, u in zip(self.ring.names, used) if u]

    def leading_term(self, order: MonomialOrder):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    # -- arithmetic --
    def __add__(self, other):
        other = _coerce_pair(self, other)
        field = self.ring.field
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        res = dict(a)
        for e, c in b.items():
            v = field.add(res.get(e, 0), c)
            if v == 0:
                res.pop(e, None)
            else:
                res[e] = v
        return Polynomial(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Polynomial(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce_pair(self, other))

    def __rsub__(self, other):
        return _coerce_pair(self, other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field.convert(other))
        if other.ring != self.ring:
            raise MixedContexts(f"{self.ring} vs {other.ring}")
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero
        if len(a) < len(b):
            a, b = b, a
        res = {}
        get = res.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(_add, e1, e2))
                res[e] = get(e, 0) + c1 * c2
        return Polynomial(self.ring, _clean(self.ring.field, res))

    def __rmul__(self, other):
        return self.scale(self.ring.field.convert(other))

    def scale(self, c):
        """Multiply by a raw field value."""
        field = self.ring.field
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        return Polynomial(self.ring, {e: field.mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, exp, c):
        field = self.ring.field
        return Polynomial(
            self.ring,
            {tuple(map(_add, e, exp)): field.mul(v, c) for e, v in self.terms.items()},
        )

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative exponent")
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except InputError:
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus --
    def diff(self, var):
        i = var if isinstance(var, int) else self.ring.vars.index(var)
        field = self.ring.field
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = field.mul(c, field.convert(k))
                if v != 0:
                    res[e[:i] + (k - 1,) + e[i + 1:]] = v
        return Polynomial(self.ring, res)

    def exact_div(self, other):
        """Quotient of an exact division; raises ``ValueError`` if there is a remainder."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        field = self.ring.field
        g_lead = max(other.terms)
        g_c_inv = field.inv(other.terms[g_lead])
        gitems = list(other.terms.items())
        r = dict(self.terms)
        q = {}
        while r:
            lead = max(r)
            c = r[lead]
            shift = tuple(a - b for a, b in zip(lead, g_lead))
            if any(s < 0 for s in shift):
                raise ValueError("inexact polynomial division")
            f = field.mul(c, g_c_inv)
            q[shift] = f
            for e, gc in gitems:
                m = tuple(map(_add, e, shift))
                v = field.sub(r.get(m, 0), field.mul(f, gc))
                if v == 0:
                    r.pop(m, None)
                else:
                    r[m] = v
        return Polynomial(self.ring, q)

    def change_ring(self, ring: PolyRing):
        """Re-express in another ring by variable name (unused variables may be absent)."""
        if ring.field != self.ring.field:
            raise MixedContexts(f"{self.ring.field} vs {ring.field}")
        idx = []
        for i, name in enumerate(self.ring.names):
            idx.append(ring.vars.names.index(name) if name in ring.vars.names else None)
        res = {}
        for e, c in self.terms.items():
            new = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    j = idx[i]
                    if j is None:
                        raise MixedContexts(
                            f"variable {self.ring.names[i]!r} not in target ring {ring}"
                        )
                    new[j] = k
            res[tuple(new)] = c
        return Polynomial(ring, res)

    def evaluate(self, values):
        """Evaluate at raw field values (sequence aligned with the ring's variables)."""
        field = self.ring.field
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t = field.mul(t, field.pow(v, k))
            total = field.add(total, t)
        return total

    def content_primitive(self):
        """For QQ: ``(content, primitive part)`` with integer coprime coefficients."""
        from math import gcd
        from fractions import Fraction

        if self.ring.field != QQ or not self.terms:
            return 1, self
        den = 1
        for c in self.terms.values():
            if type(c) is not int:
                den = den * c.denominator // gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        lead = ints[max(ints)]
        if lead < 0:
            g = -g
        return QQ.norm(Fraction(g, den)), Polynomial(self.ring, {e: v // g for e, v in ints.items()})

    # -- rendering --
    def sorted_terms(self):
        """Terms in display order: the last variable is the most significant."""
        return sorted(self.terms.items(), key=lambda ec: ec[0][::-1], reverse=True)

    def __str__(self):
        return render_polynomial(self)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


def _clean(field, acc):
    if field.characteristic:
        p = field.characteristic
        out = {}
        for e, c in acc.items():
            c %= p
            if c:
                out[e] = c
        return out
    norm = field.norm
    return {e: norm(c) for e, c in acc.items() if c != 0}


def _render_coeff(field, c):
    return field.render(c)


def render_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    field = f.ring.field
    names = f.ring.names
    pieces = []
    for exp, c in f.sorted_terms():
        mono = []
        for name, k in zip(names, exp):
            if k == 1:
                mono.append(name)
            elif k > 1:
                mono.append(f"{name}^{k}")
        neg = field.characteristic == 0 and c < 0
        mag = -c if neg else c
        if mono:
            body = "*".join(mono) if mag == 1 else f"{_render_coeff(field, mag)}*" + "*".join(mono)
        else:
            body = _render_coeff(field, mag)
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def random_polynomial(ring: PolyRing, rng: random.Random, nterms=3, degree=3):
    terms = []
    for _ in range(nterms):
        exp = [0] * ring.nvars
        budget = rng.randint(0, degree)
        for _ in range(budget):
            exp[rng.randrange(ring.nvars)] += 1
        terms.append((exp, ring.field.random_element(rng)))
    return Polynomial.from_terms(ring, terms)


# ---------------------------------------------------------------------------
# substitution


def substitute(f: Polynomial, mapping):
    """Evaluation homomorphism ``x_i -> mapping[x_i]``.

    Images may be polynomials of another ring or truncated series; any type with
    ``+``, ``*``, ``scale`` and ``unit`` works.  Every variable that occurs in
    ``f`` must be mapped.
    """
    names = f.ring.names
    images = []
    sample = None
    for i, name in enumerate(names):
        img = mapping.get(name)
        images.append(img)
        if img is not None and sample is None and not isinstance(img, _Number):
            sample = img
    for e in f.terms:
        for name, k, img in zip(names, e, images):
            if k and img is None:
                raise UnmappedVariable(f"variable {name!r} is not mapped")
    if sample is None:
        raise UnmappedVariable("substitution needs at least one non-scalar image to fix the target")
    unit = sample.unit()
    images = [unit.scale_raw(img) if isinstance(img, _Number) else img for img in images]
    powers = [dict() for _ in names]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            if k == 1:
                cache[1] = images[i]
            else:
                half = power(i, k // 2)
                sq = half * half
                cache[k] = sq * images[i] if k % 2 else sq
        return cache[k]

    total = None
    for e, c in f.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                p = power(i, k)
                term = p if term is None else term * p
        if term is None:
            term = unit
        term = term.scale_raw(c)
        total = term if total is None else total + term
    return total if total is not None else unit.scale_raw(0)


def _poly_unit(self):
    return self.ring.one


def _poly_scale_raw(self, c):
    """Scale by a raw value of the *source* field (the fields must agree)."""
    return self.scale(self.ring.field.convert(c))


Polynomial.unit = _poly_unit
Polynomial.scale_raw = _poly_scale_raw


# ---------------------------------------------------------------------------
# matrices


class PolyMatrix:
    """Dense rows x cols grid of polynomials over one ring."""

    def __init__(self, ring: PolyRing, rows: int, cols: int, entries=None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[ring.zero for _ in range(cols)] for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise InputError("matrix entries do not match the declared shape")
        self.entries = [[ring.convert(x) for x in r] for r in entries]

    @classmethod
    def from_rows(cls, ring, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, n, n, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, rows, cols):
        return cls(ring, rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        return PolyMatrix(
            self.ring, self.cols, self.rows, [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def hstack(self, other):
        if other.rows != self.rows:
            raise InputError("row counts differ")
        return PolyMatrix(self.ring, self.rows, self.cols + other.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.ring.zero
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.terms:
                        b = other.entries[k][j]
                        if b.terms:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, self.rows, other.cols, out)

    def is_zero(self):
        return all(not x.terms for r in self.entries for x in r)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self.entries == other.entries

    def map(self, fn):
        return [[fn(x) for x in r] for r in self.entries]

    def submatrix(self, rows, cols):
        return PolyMatrix(self.ring, len(rows), len(cols), [[self.entries[i][j] for j in cols] for i in rows])

    def det(self):
        if self.rows != self.cols:
            raise InputError("determinant of a non-square matrix")
        return bareiss_det([list(r) for r in self.entries], self.ring)

    def rank(self):
        return rank_over_fraction_field(self)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.entries)
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"


def jacobian_matrix(gens, variables=None, ring=None):
    """Entry ``(i, j)`` is ``d gens[j] / d variables[i]`` (rows: variables, cols: generators)."""
    if ring is None:
        if not gens:
            raise InputError("need a ring when the generator list is empty")
        ring = gens[0].ring
    if variables is None:
        variables = ring.names
    cols = []
    for g in gens:
        g = ring.convert(g)
        cols.append([g.diff(v) for v in variables])
    entries = [[cols[j][i] for j in range(len(gens))] for i in range(len(variables))]
    return PolyMatrix(ring, len(variables), len(gens), entries)


def bareiss_det(m, ring):
    """Fraction-free determinant with pivoting; ``m`` is consumed."""
    n = len(m)
    if n == 0:
        return ring.one
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        piv = _choose_pivot(m, k, k)
        if piv is None:
            return ring.zero
        pi, pj = piv
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        p = m[k][k]
        for i in range(k + 1, n):
            a = m[i][k]
            for j in range(k + 1, n):
                num = p * m[i][j] - a * m[k][j]
                m[i][j] = num.exact_div(prev) if not prev.is_constant() or prev.constant_value() != 1 else num
            m[i][k] = ring.zero
        prev = p
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def _choose_pivot(m, r0, c0):
    """Pick the nonzero entry with the fewest terms and lowest degree (deterministic)."""
    best = None
    best_key = None
    for i in range(r0, len(m)):
        row = m[i]
        for j in range(c0, len(row)):
            x = row[j]
            if x.terms:
                key = (len(x.terms), x.total_degree(), i, j)
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
                    if key[0] == 1 and key[1] == 0:
                        return best
    return best


def minors_ideal(M: PolyMatrix, a: int):
    """Generators of the ideal of ``a x a`` minors (zeros dropped, duplicates removed)."""
    if a < 0:
        raise InputError("minor size must be nonnegative")
    if a == 0:
        return [M.ring.one]
    if a > min(M.rows, M.cols):
        return []
    out = []
    seen = set()
    for rows in combinations(range(M.rows), a):
        for cols in combinations(range(M.cols), a):
            d = bareiss_det([[M.entries[i][j] for j in cols] for i in rows], M.ring)
            if d.terms:
                key = frozenset(d.terms.items())
                if key not in seen:
                    seen.add(key)
                    out.append(d)
    return out


def rank_over_fraction_field(M) -> int:
    """Rank of a polynomial matrix over the fraction field of its ring.

    Constant matrices use the exact numeric rank in :mod:`jetscheme.linalg`.
    Otherwise a specialisation at a seeded random point gives a lower bound and
    the structural (term) rank an upper bound; when they meet the rank is
    settled, and if not, fraction-free Bareiss elimination decides.
    """
    from . import linalg

    if isinstance(M, PolyMatrix):
        entries, ring = M.entries, M.ring
    else:
        entries, ring = M
    if not entries or not entries[0]:
        return 0
    if all(x.is_constant() for r in entries for x in r):
        return linalg.rank([[x.constant_value() for x in r] for r in entries], ring.field)
    upper = term_rank(entries)
    if upper == 0:
        return 0
    lower = specialized_rank(entries, ring, random.Random(0x5EED))
    if lower == upper:
        return upper
    return bareiss_rank([list(r) for r in entries], ring)


def term_rank(entries) -> int:
    """Maximum matching between rows and columns through nonzero entries."""
    rows = [[j for j, x in enumerate(r) if x.terms] for r in entries]
    match_col = {}

    def augment(i, seen):
        for j in rows[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_col or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    return sum(1 for i in range(len(rows)) if augment(i, set()))


def specialized_rank(entries, ring, rng: random.Random, tries=2) -> int:
    """Rank at random points, modulo a 31-bit prime in characteristic 0 (a lower bound)."""
    from . import linalg

    p = ring.field.characteristic
    best = 0
    for attempt in range(tries):
        prime = p or linalg.PRIMES[attempt % len(linalg.PRIMES)]
        vals = [rng.randrange(1, prime) for _ in range(ring.nvars)]
        pows = {}
        rows = []
        try:
            for r in entries:
                row = []
                for x in r:
                    acc = 0
                    for e, c in x.terms.items():
                        t = linalg.to_mod(c, prime)
                        for i, k in enumerate(e):
                            if k:
                                key = (i, k)
                                pv = pows.get(key)
                                if pv is None:
                                    pv = pow(vals[i], k, prime)
                                    pows[key] = pv
                                t = t * pv % prime
                        acc += t
                    row.append(acc % prime)
                rows.append(row)
        except ZeroDivisionError:
            continue
        best = max(best, linalg.rank_mod_p(rows, prime))
    return best


def bareiss_rank(m, ring) -> int:
    """Fraction-free elimination with full pivoting; ``m`` is consumed."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    prev = None
    rank = 0
    for k in range(min(rows, cols)):
        piv = _choose_pivot(m, k, k)
        if piv is None:
            break
        pi, pj = piv
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
        p = m[k][k]
        rank += 1
        rowk = m[k]
        for i in range(k + 1, rows):
            rowi = m[i]
            a = rowi[k]
            for j in range(k + 1, cols):
                num = p * rowi[j]
                if a.terms and rowk[j].terms:
                    num = num - a * rowk[j]
                rowi[j] = num.exact_div(prev) if prev is not None else num
            rowi[k] = ring.zero
        prev = p
    return rank
