"""Truncated power series in ``t`` and Smith normal form over ``k[[t]]``.

Coefficients live in a *domain*: a field (raw values) or a :class:`PolyRing`
of transcendence parameters (coefficients are polynomials in ``u``, and a
coefficient counts as nonzero iff it is a nonzero polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import BudgetExceeded, InputError, MixedContexts, PrecisionExhausted
from .kernels import series_mul_mod_p

__all__ = [
    "Valuation",
    "TruncSeries",
    "SmithForm",
    "min_valuation",
    "smith_normal_form",
    "determinantal_divisors",
    "series_matmul",
]


@dataclass(frozen=True, order=False)
class Valuation:
    """A finite order, or ``AtLeast(N)`` when the series vanishes modulo ``t^N``."""

    order: int
    exact: bool = True

    @classmethod
    def at_least(cls, n):
        return cls(n, False)

    @property
    def is_finite(self):
        return self.exact

    def __str__(self):
        return str(self.order) if self.exact else f"AtLeast({self.order})"

    def __repr__(self):
        return f"Valuation({self})"

    def to_json(self):
        return {"order": self.order, "exact": self.exact}

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.exact and self.order == other
        if isinstance(other, Valuation):
            return self.order == other.order and self.exact == other.exact
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.exact))

    def __add__(self, other):
        if isinstance(other, int):
            other = Valuation(other)
        if self.exact and other.exact:
            return Valuation(self.order + other.order)
        return Valuation.at_least(self.order + other.order)


def min_valuation(vals, prec=None):
    """Ultrametric minimum; an empty family is ``AtLeast(prec)`` (the zero ideal)."""
    vals = list(vals)
    if not vals:
        if prec is None:
            raise InputError("minimum of no valuations needs a precision")
        return Valuation.at_least(prec)
    finite = [v.order for v in vals if v.exact]
    bounds = [v.order for v in vals if not v.exact]
    lo = min(finite) if finite else None
    if bounds and (lo is None or lo >= min(bounds)):
        return Valuation.at_least(min(bounds))
    return Valuation(lo)


def _dzero(domain):
    return domain.zero


def _is_zero(domain, c):
    return domain.is_zero(c)


def _mul_lists(domain, a, b, n):
    """Coefficients 0..n-1 of a*b."""
    if domain.is_field:
        p = domain.characteristic
        if p:
            return series_mul_mod_p(a, b, n - 1, p)
        out = [0] * n
        for i, ai in enumerate(a[:n]):
            if ai:
                for j in range(min(len(b), n - i)):
                    bj = b[j]
                    if bj:
                        out[i + j] += ai * bj
        norm = domain.norm
        return [norm(x) for x in out]
    zero = domain.zero
    out = [zero] * n
    for i, ai in enumerate(a[:n]):
        if ai.terms:
            for j in range(min(len(b), n - i)):
                bj = b[j]
                if bj.terms:
                    out[i + j] = out[i + j] + ai * bj
    return out


class TruncSeries:
    """``c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N)``."""

    __slots__ = ("domain", "coeffs", "prec")

    def __init__(self, domain, coeffs, prec=None):
        if prec is None:
            prec = len(coeffs)
        if prec < 1:
            raise InputError("series precision must be at least 1")
        coeffs = list(coeffs[:prec])
        if len(coeffs) < prec:
            coeffs += [domain.zero] * (prec - len(coeffs))
        self.domain = domain
        self.coeffs = coeffs
        self.prec = prec

    @classmethod
    def zero(cls, domain, prec):
        return cls(domain, [], prec)

    @classmethod
    def one(cls, domain, prec):
        return cls(domain, [domain.one], prec)

    @classmethod
    def monomial(cls, domain, k, prec, coeff=None):
        c = domain.one if coeff is None else coeff
        if k >= prec:
            return cls(domain, [], prec)
        return cls(domain, [domain.zero] * k + [c], prec)

    def _check(self, other):
        if other.domain != self.domain:
            raise MixedContexts(f"series over {self.domain} and {other.domain}")
        return min(self.prec, other.prec)

    def _lift(self, other):
        if isinstance(other, TruncSeries):
            return other
        return self.unit().scale_raw(other)

    def __add__(self, other):
        other = self._lift(other)
        n = self._check(other)
        add = self.domain.add
        return TruncSeries(self.domain, [add(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        n = self._check(other)
        sub = self.domain.sub
        return TruncSeries(self.domain, [sub(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        neg = self.domain.neg
        return TruncSeries(self.domain, [neg(a) for a in self.coeffs], self.prec)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale_raw(other)
        n = self._check(other)
        return TruncSeries(self.domain, _mul_lists(self.domain, self.coeffs, other.coeffs, n), n)

    def __rmul__(self, other):
        return self.scale_raw(other)

    def __pow__(self, k):
        out = self.unit()
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # substitution protocol
    def unit(self):
        return TruncSeries.one(self.domain, self.prec)

    def scale_raw(self, c):
        """Multiply by a scalar: a raw field value, or a domain element."""
        d = self.domain
        if d.is_field:
            c = d.convert(c)
            if c == 0:
                return TruncSeries.zero(d, self.prec)
            return TruncSeries(d, [d.mul(a, c) for a in self.coeffs], self.prec)
        c = d.convert(c)
        if not c.terms:
            return TruncSeries.zero(d, self.prec)
        return TruncSeries(d, [a * c for a in self.coeffs], self.prec)

    def scale(self, c):
        return self.scale_raw(c)

    # queries
    def is_zero(self):
        return all(self.domain.is_zero(c) for c in self.coeffs)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if not self.domain.is_zero(c):
                return Valuation(i)
        return Valuation.at_least(self.prec)

    def shift_down(self, v):
        """``self / t^v`` assuming the first ``v`` coefficients vanish (padded with zeros)."""
        return TruncSeries(self.domain, self.coeffs[v:], self.prec)

    def shift_up(self, v):
        return TruncSeries(self.domain, [self.domain.zero] * v + self.coeffs, self.prec)

    def truncate(self, n):
        return TruncSeries(self.domain, self.coeffs[:n], n)

    def inverse(self):
        """Multiplicative inverse of a unit (field coefficients only)."""
        d = self.domain
        if not d.is_field:
            raise InputError("series inverse needs field coefficients")
        c0 = self.coeffs[0]
        if c0 == 0:
            raise InputError("series with zero constant term is not a unit")
        inv0 = d.inv(c0)
        out = [inv0]
        a = self.coeffs
        for k in range(1, self.prec):
            s = 0
            for j in range(1, k + 1):
                if a[j] != 0:
                    s = d.add(s, d.mul(a[j], out[k - j]))
            out.append(d.neg(d.mul(s, inv0)))
        return TruncSeries(d, out, self.prec)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            try:
                other = self._lift(other)
            except InputError:
                return NotImplemented
        return self.domain == other.domain and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.prec, tuple(str(c) for c in self.coeffs)))

    def __str__(self):
        d = self.domain
        parts = []
        for k, c in enumerate(self.coeffs):
            if d.is_zero(c):
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if d.is_field:
                neg = d.characteristic == 0 and c < 0
                mag = -c if neg else c
                text = d.render(mag)
                if mono:
                    body = mono if mag == 1 else f"{text}*{mono}"
                else:
                    body = text
            else:
                neg = False
                text = d.render(c)
                body = (mono if str(c) == "1" else f"{text}*{mono}") if mono else str(c)
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"TruncSeries({self}, prec={self.prec})"


def series_matmul(A, B):
    rows, inner, cols = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _identity(domain, n, prec):
    return [[TruncSeries.one(domain, prec) if i == j else TruncSeries.zero(domain, prec) for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    """``U * A * V = D`` modulo ``t^N`` with ``D`` diagonal.

    ``exponents`` are the certified invariant exponents (nondecreasing);
    ``rank`` counts them.  ``tail`` is ``AtLeast(N)`` when the remaining block
    vanished modulo ``t^N`` and there were diagonal slots left.
    """

    exponents: tuple
    rank: int
    precision: int
    U: list = dc_field(repr=False, default=None)
    V: list = dc_field(repr=False, default=None)
    D: list = dc_field(repr=False, default=None)
    tail: Valuation = None


def smith_normal_form(A, prec=None, track=True) -> SmithForm:
    """Local-PID elimination with minimal-valuation pivots.

    Field coefficients: the pivot row is divided by its unit part, so ``D`` has
    entries ``t^a``.  Parameter coefficients: elimination is fraction-free
    (rows are multiplied by the pivot's unit part), so ``D`` carries units.
    An exponent ``a_j`` is certified iff ``a_j < N - (a_1 + ... + a_{j-1})``;
    a nonzero pivot past that bound raises :class:`PrecisionExhausted`.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0 or cols == 0:
        return SmithForm((), 0, prec or 0, [], [], [], None)
    domain = A[0][0].domain
    N = min(x.prec for r in A for x in r)
    if prec is not None:
        N = min(N, prec)
    M = [[x.truncate(N) for x in r] for r in A]
    U = _identity(domain, rows, N) if track else None
    V = _identity(domain, cols, N) if track else None
    exps = []
    used = 0
    tail = None
    for k in range(min(rows, cols)):
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                v = M[i][j].valuation()
                if v.exact and (best is None or v.order < best[0]):
                    best = (v.order, i, j)
        if best is None:
            tail = Valuation.at_least(N)
            break
        v, pi, pj = best
        if v >= N - used:
            raise PrecisionExhausted(
                f"invariant exponent {v} not certified at precision {N} (already extracted {used})"
            )
        M[k], M[pi] = M[pi], M[k]
        if track:
            U[k], U[pi] = U[pi], U[k]
        if pj != k:
            for r in M:
                r[k], r[pj] = r[pj], r[k]
            if track:
                for r in V:
                    r[k], r[pj] = r[pj], r[k]
        piv = M[k][k]
        unit = piv.shift_down(v)
        if domain.is_field:
            inv = unit.inverse()
            M[k] = [x * inv for x in M[k]]
            if track:
                U[k] = [x * inv for x in U[k]]
            # rows
            for i in range(k + 1, rows):
                a = M[i][k]
                if a.is_zero():
                    continue
                q = a.shift_down(v)
                M[i] = [x - q * y for x, y in zip(M[i], M[k])]
                M[i][k] = TruncSeries.zero(domain, N)
                if track:
                    U[i] = [x - q * y for x, y in zip(U[i], U[k])]
            # columns
            for j in range(k + 1, cols):
                a = M[k][j]
                if a.is_zero():
                    continue
                q = a.shift_down(v)
                for r in M:
                    r[j] = r[j] - q * r[k]
                M[k][j] = TruncSeries.zero(domain, N)
                if track:
                    for r in V:
                        r[j] = r[j] - q * r[k]
        else:
            for i in range(k + 1, rows):
                a = M[i][k]
                if a.is_zero():
                    continue
                q = a.shift_down(v)
                M[i] = [unit * x - q * y for x, y in zip(M[i], M[k])]
                M[i][k] = TruncSeries.zero(domain, N)
                if track:
                    U[i] = [unit * x - q * y for x, y in zip(U[i], U[k])]
            for j in range(k + 1, cols):
                a = M[k][j]
                if a.is_zero():
                    continue
                q = a.shift_down(v)
                for r in M:
                    r[j] = unit * r[j] - q * r[k]
                M[k][j] = TruncSeries.zero(domain, N)
                if track:
                    for r in V:
                        r[j] = unit * r[j] - q * r[k]
        exps.append(v)
        used += v
    return SmithForm(tuple(exps), len(exps), N, U, V, M, tail)


def _det_dp(M, domain, n_prec, row_idx, col_idx):
    """Laplace-expansion determinant with memoisation on column subsets."""
    k = len(row_idx)
    memo = {}

    def rec(depth, cmask):
        if depth == k:
            return [domain.one] + [domain.zero] * (n_prec - 1)
        key = cmask
        if key in memo:
            return memo[key]
        acc = [domain.zero] * n_prec
        r = row_idx[depth]
        sign = 1
        for c in col_idx:
            bit = 1 << c
            if cmask & bit:
                continue
            entry = M[r][c]
            if any(not domain.is_zero(x) for x in entry):
                sub = rec(depth + 1, cmask | bit)
                prod = _mul_lists(domain, entry, sub, n_prec)
                if sign > 0:
                    acc = [domain.add(a, b) for a, b in zip(acc, prod)]
                else:
                    acc = [domain.sub(a, b) for a, b in zip(acc, prod)]
            sign = -sign
        memo[key] = acc
        return acc

    return rec(0, 0)


def determinantal_divisors(A, max_size=6):
    """k-th entry: minimal valuation over all k x k minors (brute-force oracle)."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if max(rows, cols) > max_size:
        raise BudgetExceeded(f"determinantal divisors capped at {max_size}x{max_size}")
    if rows == 0 or cols == 0:
        return []
    domain = A[0][0].domain
    N = min(x.prec for r in A for x in r)
    M = [[x.coeffs[:N] for x in r] for r in A]
    out = []
    for k in range(1, min(rows, cols) + 1):
        best = None
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                d = _det_dp(M, domain, N, R, C)
                v = next((i for i, c in enumerate(d) if not domain.is_zero(c)), None)
                if v is not None and (best is None or v < best):
                    best = v
                    if best == 0:
                        break
            if best == 0:
                break
        out.append(Valuation(best) if best is not None else Valuation.at_least(N))
    return out
