"""Plane trees with dangling legs, counted by edges.

With a weight d_k per vertex of degree k, the series T(t, y) of trees
rooted on a leg (y marks the other legs, t the edges) is the unique
solution of T = sum_k d_k (t T + y)^(k - 1).  The number of trees with
l legs is the coefficient of y^(l - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from .core import SeriesError, qq

TY, tt, yy = ring("t,y", QQ)


def _trunc(p, dt, dy):
    return TY.from_dict({m: c for m, c in p.items() if m[0] <= dt and m[1] <= dy}) if p else p


def _mul(p, q, dt, dy):
    out = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            a, b = ma[0] + mb[0], ma[1] + mb[1]
            if a <= dt and b <= dy:
                out[(a, b)] = out.get((a, b), 0) + ca * cb
    out = {k: v for k, v in out.items() if v}
    return TY.from_dict(out) if out else TY(0)


def normalize_weights(weights, max_degree: int) -> dict:
    """Turn a dict or a callable degree -> weight into a finite dict."""
    if callable(weights):
        table = {k: weights(k) for k in range(1, max_degree + 1)}
    else:
        table = dict(weights)
    return {k: Fraction(v) for k, v in table.items() if v and 1 <= k <= max_degree}


@dataclass
class LeggedTrees:
    """Truncated tree series: exact for t-degree <= t_order and at most
    ``max_legs`` legs."""

    series: object          # element of QQ[t, y]
    t_order: int
    max_legs: int

    def count(self, legs: int) -> dict:
        """T_l(t) as {edges: count}."""
        if legs > self.max_legs:
            raise SeriesError(f"only trees with up to {self.max_legs} legs were computed")
        if legs < 1:
            return {}
        out = {}
        for (a, b), c in self.series.items():
            if b == legs - 1:
                out[a] = Fraction(int(c.numerator), int(c.denominator))
        return dict(sorted(out.items()))

    def corner(self, legs: int) -> dict:
        """Corner-rooted trees: 2 t T_l'(t) / l + T_l(t)."""
        return {a: c * (Fraction(2 * a, legs) + 1) for a, c in self.count(legs).items()}

    def at_one(self, legs: int, corner: bool = False) -> Fraction:
        """Value at t = 1; only meaningful when T_l is a polynomial."""
        return sum((self.corner(legs) if corner else self.count(legs)).values(), Fraction(0))


def legged_trees(weights, t_order: int, max_legs: int, max_degree: int | None = None) -> LeggedTrees:
    """Solve the tree equation coefficient by coefficient.

    ``weights`` maps a degree to its weight (dict or callable).  Only
    degrees up to t_order + max_legs can matter, since (tT + y) has no
    constant term.
    """
    dt, dy = t_order, max(max_legs - 1, 0)
    top = dt + dy + 1
    w = normalize_weights(weights, min(max_degree or top, top))
    base = TY(0)
    cur = base
    for _ in range(dt + dy + 2):
        inner = _trunc(tt * cur + yy, dt, dy)
        power = TY(1)
        nxt = TY(0)
        for k in range(1, max(w, default=0) + 1):
            if k > 1:
                power = _mul(power, inner, dt, dy)
            if k in w:
                nxt += power * qq(w[k])
        nxt = _trunc(nxt, dt, dy)
        if nxt == cur:
            break
        cur = nxt
    return LeggedTrees(cur, dt, max_legs)


# ---------------------------------------------------------------------------
# closed forms used as oracles


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def regular_tree_count(p: int, legs: int) -> tuple:
    """(edges, count) of p-regular trees with ``legs`` legs, or (None, 0)."""
    if p < 3 or (legs - 2) % (p - 2) or legs < p:
        return None, 0
    k = (legs - 2) // (p - 2)
    return k - 1, Fraction(factorial((p - 1) * k), factorial(k) * factorial((p - 2) * k + 1))


def eulerian_tree_count(i: int, j: int) -> Fraction:
    """Eulerian trees with 2i legs and j edges."""
    if i < 1 or j < 0:
        return Fraction(0)
    return Fraction(comb(2 * i + j - 1, j + 1) * comb(i + j - 1, j), 2 * i - 1)


def four_eulerian_tree_count(i: int, j: int) -> Fraction:
    """Trees with 2i legs, j edges, even degrees and no vertex of degree 2."""
    if i < 2 or j < 0 or j > i - 2:
        return Fraction(0)
    return Fraction(comb(2 * i + j - 1, j + 1) * comb(i - 2, j), 2 * i - 1)
