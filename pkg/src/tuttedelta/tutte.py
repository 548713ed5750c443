"""Reference computations of the Tutte polynomial and its evaluations."""

from __future__ import annotations

import itertools
from collections import Counter
from math import comb

import sympy

from .graph import (GraphError, Multigraph, bits, canonical_key, components,
                    enumerate_spanning_forests, popcount, subsets)
from .poly import BivariatePolynomial

SUBGRAPH_SUM_LIMIT = 24
SANDPILE_LIMIT = 16

_u, _q, _y = sympy.symbols("u q y")


def _shifted(n: int, k: int) -> dict:
    """(X - 1)^n (Y - 1)^k expanded, as {(i, j): coeff}."""
    out = {}
    for i in range(n + 1):
        a = comb(n, i) * (-1) ** (n - i)
        for j in range(k + 1):
            out[(i, j)] = a * comb(k, j) * (-1) ** (k - j)
    return out


def tutte_subgraph_sum(g: Multigraph) -> BivariatePolynomial:
    """Sum of (x-1)^(cc(S)-cc(G)) (y-1)^(|S|+cc(S)-|V|) over all edge sets S."""
    if g.edge_count > SUBGRAPH_SUM_LIMIT:
        raise GraphError(f"subgraph sum limited to {SUBGRAPH_SUM_LIMIT} edges", "size_limit")
    base = components(g, g.full_mask)
    hist = Counter()
    nv = g.vertex_count
    for s in subsets(g.full_mask):
        c = components(g, s)
        hist[(c - base, c + popcount(s) - nv)] += 1
    total = {}
    for (n, k), mult in hist.items():
        for key, c in _shifted(n, k).items():
            total[key] = total.get(key, 0) + mult * c
    return BivariatePolynomial(total)


def tutte_del_contract(g: Multigraph, memo: dict | None = None) -> BivariatePolynomial:
    """Deletion/contraction on the lowest edge id, memoised on a canonical key."""
    memo = {} if memo is None else memo
    return _delcon(g, memo)


def _delcon(g, memo):
    if g.edge_count == 0:
        return BivariatePolynomial.const(1)
    key = canonical_key(g, budget=720)
    hit = memo.get(key)
    if hit is not None:
        return hit
    e = min(g.edges)
    if g.is_loop(e):
        res = BivariatePolynomial.Y * _delcon(g.delete(e), memo)
    elif g.is_isthmus(e):
        res = BivariatePolynomial.X * _delcon(g.contract(e), memo)
    else:
        res = _delcon(g.delete(e), memo) + _delcon(g.contract(e), memo)
    memo[key] = res
    return res


def tutte(g: Multigraph) -> BivariatePolynomial:
    return tutte_del_contract(g)


# ---------------------------------------------------------------------------
# specialisations


def specialize(poly: BivariatePolynomial, what, g: Multigraph | None = None):
    """Evaluate a Tutte polynomial.

    ``what`` is either a point ``(x, y)`` or one of the names
    ``"trees"`` (T(1,1)), ``"forests"`` (T(2,1)), ``"connected"`` (T(1,2)),
    ``"forest_u"`` (T(u+1,1) as a sympy polynomial in u) or
    ``"chromatic"`` (needs ``g``; a sympy polynomial in q).
    """
    if isinstance(what, tuple):
        return poly(*what)
    if what == "trees":
        return poly(1, 1)
    if what == "forests":
        return poly(2, 1)
    if what == "connected":
        return poly(1, 2)
    if what == "forest_u":
        return sympy.Poly(sympy.expand(poly(_u + 1, 1)), _u)
    if what == "chromatic":
        if g is None:
            raise ValueError("chromatic polynomial needs the graph")
        cc = components(g, g.full_mask)
        expr = (-1) ** (g.vertex_count - cc) * _q ** cc * poly(1 - _q, 0)
        return sympy.Poly(sympy.expand(expr), _q)
    raise ValueError(f"unknown specialisation {what!r}")


def forest_polynomial_u(g: Multigraph):
    """Sum over spanning forests of u^(cc-1), computed directly (no Tutte)."""
    counts = Counter(components(g, f) for f in enumerate_spanning_forests(g))
    return sympy.Poly(sum(c * _u ** (k - 1) for k, c in counts.items()), _u)


def proper_colourings(g: Multigraph, q: int) -> int:
    count = 0
    verts = list(g.vertices)
    for colours in itertools.product(range(q), repeat=len(verts)):
        col = dict(zip(verts, colours))
        if all(col[u] != col[v] for u, v in g.edges.values()):
            count += 1
    return count


# ---------------------------------------------------------------------------
# sandpile bridge


def sandpile_degrees(g: Multigraph):
    deg = {v: 0 for v in g.vertices}
    nonloop = {v: 0 for v in g.vertices}
    mult = Counter()
    for u, v in g.edges.values():
        deg[u] += 1
        deg[v] += 1
        if u != v:
            nonloop[u] += 1
            nonloop[v] += 1
            mult[(u, v)] += 1
            mult[(v, u)] += 1
    return deg, nonloop, mult


def topple(g: Multigraph, grains: dict, s: int, tables=None) -> dict:
    """Topple vertex ``s``: each neighbour t gains deg(s, t), s loses its non-loop degree."""
    deg, nonloop, mult = tables or sandpile_degrees(g)
    out = dict(grains)
    for t in g.vertices:
        if t != s:
            out[t] += mult[(s, t)]
    out[s] -= nonloop[s]
    return out


def is_recurrent(g: Multigraph, grains: dict, sink: int, tables=None) -> bool:
    """Stable configuration test: the sink holds its degree and every vertex
    can be toppled once.  Vertices are toppled greedily (sink first)."""
    tables = tables or sandpile_degrees(g)
    deg = tables[0]
    if grains[sink] != deg[sink]:
        return False
    if any(grains[v] >= deg[v] for v in g.vertices if v != sink):
        return False
    cur = topple(g, grains, sink, tables)
    done = {sink}
    progress = True
    while progress and len(done) < g.vertex_count:
        progress = False
        for v in g.vertices:
            if v not in done and cur[v] >= deg[v]:
                cur = topple(g, cur, v, tables)
                done.add(v)
                progress = True
    return len(done) == g.vertex_count


def sandpile_recurrent_gf(g: Multigraph, sink: int = 0):
    """Generating polynomial (sympy, variable y) of recurrent configurations by level."""
    if not g.is_connected():
        raise GraphError("sandpile needs a connected graph", "disconnected")
    if g.edge_count > SANDPILE_LIMIT:
        raise GraphError(f"sandpile limited to {SANDPILE_LIMIT} edges", "size_limit")
    if sink not in g.vertices:
        raise GraphError(f"sink {sink} is not a vertex", "bad_vertex")
    tables = sandpile_degrees(g)
    deg = tables[0]
    others = [v for v in g.vertices if v != sink]
    levels = Counter()
    for values in itertools.product(*(range(deg[v]) for v in others)):
        grains = dict(zip(others, values))
        grains[sink] = deg[sink]
        if is_recurrent(g, grains, sink, tables):
            levels[sum(grains.values()) - g.edge_count] += 1
    return sympy.Poly(sum(c * _y ** k for k, c in levels.items()) or 0, _y)
