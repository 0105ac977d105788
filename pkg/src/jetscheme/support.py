"""Cohomological support ideals, Fitting ideals and orders of contact along arcs."""

from __future__ import annotations

from .errors import BudgetExceeded, InputError
from .polynomials import minors_ideal
from .series import Valuation, min_valuation

__all__ = [
    "csi_ideal",
    "higher_jacobian",
    "fitting_ideal",
    "ord_along_arc",
    "csi_order_via_profile",
    "csi_full_order",
    "invariant_sum_via_orders",
]

MAX_MINOR = 8


def _minors(M, a):
    if a > MAX_MINOR and a <= min(M.rows, M.cols):
        raise BudgetExceeded(f"minor size {a} above cap {MAX_MINOR}")
    return minors_ideal(M, a)


def csi_ideal(K, i: int, p: int):
    """Generators of ``sum_{u+v=r_i-p} I_u(d_{i+1}) I_v(d_i)`` (not interreduced)."""
    if i < 0 or p < 0:
        raise InputError("support levels are nonnegative")
    s = K.rank(i) - p
    ring = K.ring
    if s <= 0:
        return [ring.one]
    upper = K.diff(i + 1)
    lower = K.diff(i)
    out = []
    seen = set()
    for u in range(s + 1):
        v = s - u
        Iu = _minors(upper, u)
        if not Iu:
            continue
        Iv = _minors(lower, v)
        for g in Iu:
            for h in Iv:
                prod = g * h
                if prod.terms:
                    key = frozenset(prod.terms.items())
                    if key not in seen:
                        seen.add(key)
                        out.append(prod)
    return out


def higher_jacobian(gens, i: int, p: int, ring=None):
    from .arcs import lci_cotangent_presentation

    return csi_ideal(lci_cotangent_presentation(gens, ring), i, p)


def fitting_ideal(M, p: int):
    """``Fitt^p`` of the cokernel of ``M`` (``r_0 x r_1``): the ``(r_0 - p)``-minors."""
    a = M.rows - p
    if a <= 0:
        return [M.ring.one]
    return minors_ideal(M, a)


def ord_along_arc(gens, arc, prec=None) -> Valuation:
    N = prec or arc.prec
    return min_valuation([arc.substitute_series(g, N).valuation() for g in gens], N)


def csi_order_via_profile(p, i: int, level_p: int, prec=None) -> Valuation:
    """``min_{u+v=r_i-p} (a_{i,1..u} + a_{i-1,1..v})`` with ``a = inf`` past ``c``."""
    N = prec or p.precision
    s = p.r_at(i) - level_p
    if s <= 0:
        return Valuation(0)
    ai = p.a_at(i)
    am = p.a_at(i - 1)
    best = None
    for u in range(s + 1):
        v = s - u
        if u > len(ai) or v > len(am):
            continue
        val = sum(ai[:u]) + sum(am[:v])
        if best is None or val < best:
            best = val
    if best is None or best >= N:
        return Valuation.at_least(N)
    return Valuation(best)


def csi_full_order(p, i: int) -> int:
    """Order at level ``(i, b_i)``: every factor at ``i`` and ``i - 1``."""
    return sum(p.a_at(i)) + sum(p.a_at(i - 1))


def invariant_sum_via_orders(p, i: int) -> int:
    """``sum_j a_{i,j}`` recovered as an alternating sum of full-level orders."""
    total = 0
    for j in range(i + 1):
        total += (-1) ** j * csi_order_via_profile(p, i - j, p.b_at(i - j), prec=10**9).order
    return total
