"""Multigraphs whose edges carry identities.

Edges are addressed by integer ids and edge sets by integer bitmasks
(bit ``e`` set means edge ``e`` is present).  Deleting or contracting an
edge keeps the ids of the surviving edges, so bitmasks stay meaningful
across a whole sequence of minors.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Optional


class GraphError(ValueError):
    """Raised on malformed graphs or invalid requests on a graph."""

    def __init__(self, message: str, code: str = "graph_error"):
        super().__init__(message)
        self.code = code


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for e in ids:
        m |= 1 << e
    return m


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, items):
        self.parent = {v: v for v in items}

    def find(self, v):
        p = self.parent
        while p[v] != v:
            p[v] = p[p[v]]
            v = p[v]
        return v

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


class Multigraph:
    """An undirected multigraph with loops, parallel edges and edge ids.

    ``vertices`` is the tuple of live vertex indices (contraction removes
    the larger endpoint, so a minor may have gaps).  ``edges`` maps each
    edge id to its endpoint pair ``(u, v)`` with ``u <= v``.
    """

    __slots__ = ("vertices", "edges", "labels", "__dict__")

    def __init__(self, vertex_count_or_vertices, edges, labels: Optional[dict] = None):
        if isinstance(vertex_count_or_vertices, int):
            if vertex_count_or_vertices < 0:
                raise GraphError("negative vertex count")
            vertices = tuple(range(vertex_count_or_vertices))
        else:
            vertices = tuple(sorted(set(vertex_count_or_vertices)))
        vset = set(vertices)
        emap = {}
        for item in edges:
            e, u, v = item[0], item[1], item[2]
            if e in emap:
                raise GraphError(f"duplicate edge id {e}", "duplicate_edge")
            if e < 0:
                raise GraphError(f"negative edge id {e}", "bad_edge_id")
            if u not in vset or v not in vset:
                raise GraphError(f"edge {e} has an endpoint outside the vertex set",
                                 "bad_vertex")
            emap[e] = (u, v) if u <= v else (v, u)
        self.vertices = vertices
        self.edges = dict(sorted(emap.items()))
        self.labels = dict(labels or {})

    # -- basic queries -------------------------------------------------
    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> list:
        return list(self.edges)

    @cached_property
    def full_mask(self) -> int:
        return mask_of(self.edges)

    def endpoints(self, e: int):
        try:
            return self.edges[e]
        except KeyError:
            raise GraphError(f"unknown edge id {e}", "unknown_edge") from None

    def label(self, e: int) -> str:
        return self.labels.get(e, str(e))

    def edge_by_label(self, name: str) -> int:
        for e, lab in self.labels.items():
            if lab == name:
                return e
        raise GraphError(f"no edge labelled {name!r}", "unknown_edge")

    def mask(self, names) -> int:
        """Bitmask of a collection of edge labels or ids."""
        m = 0
        for x in names:
            m |= 1 << (self.edge_by_label(x) if isinstance(x, str) else x)
        return m

    def names(self, mask: int) -> list:
        return [self.label(e) for e in bits(mask)]

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def degree(self, v: int) -> int:
        d = 0
        for a, b in self.edges.values():
            d += (a == v) + (b == v)
        return d

    @cached_property
    def _isthmus_mask(self) -> int:
        base = components(self, self.full_mask)
        out = 0
        for e in self.edges:
            if components(self, self.full_mask & ~(1 << e)) > base:
                out |= 1 << e
        return out

    def is_isthmus(self, e: int) -> bool:
        self.endpoints(e)
        return bool(self._isthmus_mask >> e & 1)

    def is_standard(self, e: int) -> bool:
        return not self.is_loop(e) and not self.is_isthmus(e)

    def is_connected(self) -> bool:
        return components(self, self.full_mask) <= 1

    def is_simple(self) -> bool:
        """True when no two edges share the same endpoint pair (loops allowed)."""
        pairs = list(self.edges.values())
        return len(pairs) == len(set(pairs))

    # -- minors --------------------------------------------------------
    def delete(self, e: int) -> "Multigraph":
        self.endpoints(e)
        return Multigraph(self.vertices,
                          [(f, u, v) for f, (u, v) in self.edges.items() if f != e],
                          self.labels)

    def contract(self, e: int) -> "Multigraph":
        u, v = self.endpoints(e)
        if u == v:
            # contracting a loop is the same as deleting it
            return self.delete(e)
        keep, gone = min(u, v), max(u, v)
        ren = lambda w: keep if w == gone else w
        return Multigraph([w for w in self.vertices if w != gone],
                          [(f, ren(a), ren(b)) for f, (a, b) in self.edges.items() if f != e],
                          self.labels)

    def compact(self) -> "Multigraph":
        """Renumber vertices 0..n-1 and edges 0..m-1 (labels follow edges)."""
        vmap = {v: i for i, v in enumerate(self.vertices)}
        emap = {e: i for i, e in enumerate(self.edges)}
        return Multigraph(len(vmap),
                          [(emap[e], vmap[u], vmap[v]) for e, (u, v) in self.edges.items()],
                          {emap[e]: lab for e, lab in self.labels.items() if e in emap})

    def __eq__(self, other):
        return (isinstance(other, Multigraph) and self.vertices == other.vertices
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges.items())))

    def __repr__(self):
        es = ", ".join(f"{self.label(e)}={u}-{v}" for e, (u, v) in self.edges.items())
        return f"Multigraph(V={list(self.vertices)}, E=[{es}])"


# ---------------------------------------------------------------------------
# subset statistics


def components(g: Multigraph, s: int) -> int:
    """Number of connected components of the spanning subgraph ``s``."""
    dsu = _DSU(g.vertices)
    count = len(g.vertices)
    for e in bits(s):
        u, v = g.edges[e]
        if dsu.union(u, v):
            count -= 1
    return count


def connected_components(g: Multigraph, s: int) -> int:
    _check_subset(g, s)
    return components(g, s)


def cyclomatic(g: Multigraph, s: int) -> int:
    """cc(s) + |s| - |V|; zero exactly when ``s`` is a forest."""
    _check_subset(g, s)
    return components(g, s) + popcount(s) - g.vertex_count


def _check_subset(g, s):
    if s & ~g.full_mask:
        raise GraphError("subset mentions edges that are not in the graph", "bad_subset")


def is_forest(g: Multigraph, s: int) -> bool:
    return cyclomatic(g, s) == 0


def is_spanning_tree(g: Multigraph, s: int) -> bool:
    return is_forest(g, s) and components(g, s) == 1


def _require_tree(g, t):
    if t & ~g.full_mask or not is_spanning_tree(g, t):
        raise GraphError("expected a spanning tree", "not_spanning_tree")


def fundamental_cycle(g: Multigraph, t: int, e: int) -> int:
    """The unique cycle of ``t + e`` for an edge ``e`` outside the tree."""
    _require_tree(g, t)
    g.endpoints(e)
    if t >> e & 1:
        raise GraphError("edge must be external to the tree", "wrong_side")
    u, v = g.edges[e]
    if u == v:
        return 1 << e
    # walk the tree path between u and v
    adj = {w: [] for w in g.vertices}
    for f in bits(t):
        a, b = g.edges[f]
        adj[a].append((b, f))
        adj[b].append((a, f))
    prev = {u: None}
    stack = [u]
    while stack:
        w = stack.pop()
        for x, f in adj[w]:
            if x not in prev:
                prev[x] = (w, f)
                stack.append(x)
    out = 1 << e
    w = v
    while prev[w] is not None:
        w, f = prev[w]
        out |= 1 << f
    return out


def fundamental_cocycle(g: Multigraph, t: int, e: int) -> int:
    """The unique cocycle meeting ``t`` only in the tree edge ``e``."""
    _require_tree(g, t)
    g.endpoints(e)
    if not t >> e & 1:
        raise GraphError("edge must be internal to the tree", "wrong_side")
    dsu = _DSU(g.vertices)
    for f in bits(t & ~(1 << e)):
        dsu.union(*g.edges[f])
    out = 0
    for f, (a, b) in g.edges.items():
        if dsu.find(a) != dsu.find(b):
            out |= 1 << f
    return out


def enumerate_spanning_forests(g: Multigraph) -> list:
    """All spanning forests as bitmasks, increasing."""
    ids = g.edge_ids
    out = []

    def rec(i, dsu_parent, mask):
        if i == len(ids):
            out.append(mask)
            return
        e = ids[i]
        rec(i + 1, dsu_parent, mask)
        u, v = g.edges[e]
        d = _DSU(())
        d.parent = dict(dsu_parent)
        if d.union(u, v):
            rec(i + 1, d.parent, mask | 1 << e)

    rec(0, {v: v for v in g.vertices}, 0)
    return sorted(out)


def enumerate_spanning_trees(g: Multigraph) -> list:
    """All spanning trees as bitmasks, increasing."""
    if not g.is_connected():
        raise GraphError("spanning trees of a disconnected graph", "disconnected")
    n = g.vertex_count
    return [f for f in enumerate_spanning_forests(g) if popcount(f) == n - 1]


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def delete(g: Multigraph, e: int) -> Multigraph:
    return g.delete(e)


def contract(g: Multigraph, e: int) -> Multigraph:
    return g.contract(e)


# ---------------------------------------------------------------------------
# canonical forms of unlabelled multigraphs


def _refined_classes(n, pairs):
    """Colour refinement: returns a colour per vertex (0..n-1 compact)."""
    nbrs = [[] for _ in range(n)]
    loops = [0] * n
    for u, v in pairs:
        if u == v:
            loops[u] += 1
        else:
            nbrs[u].append(v)
            nbrs[v].append(u)
    colour = [(len(nbrs[v]) + 2 * loops[v], loops[v]) for v in range(n)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[w] for w in nbrs[v]))) for v in range(n)]
        keys = sorted(set(sig))
        new = [keys.index(s) for s in sig]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def canonical_key(g: Multigraph, budget: int = 5040):
    """A certificate of ``g`` up to vertex renaming and edge relabelling.

    Vertices are split by colour refinement and all orderings inside the
    colour classes are tried, keeping the lexicographically least sorted
    edge list.  When that would exceed ``budget`` orderings the labelled
    edge list is returned instead; such a key is still safe for caching
    (equal keys imply isomorphic graphs) but may miss some isomorphisms.
    """
    vmap = {v: i for i, v in enumerate(g.vertices)}
    n = len(vmap)
    pairs = [(vmap[u], vmap[v]) for u, v in g.edges.values()]
    colour = _refined_classes(n, pairs)
    classes = {}
    for v in range(n):
        classes.setdefault(colour[v], []).append(v)
    groups = [classes[c] for c in sorted(classes)]
    count = 1
    for grp in groups:
        count *= factorial(len(grp))
    if count > budget:
        return ("labelled", n, tuple(sorted(pairs)))
    best = None
    for combo in itertools.product(*(itertools.permutations(grp) for grp in groups)):
        order = [v for part in combo for v in part]
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        cand = tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in pairs))
        if best is None or cand < best:
            best = cand
    return ("canon", n, tuple(colour.count(c) for c in sorted(set(colour))), best)


def connected_multigraphs(max_edges: int) -> list:
    """One representative of every connected multigraph with at most
    ``max_edges`` edges (loops and parallel edges allowed), up to
    isomorphism.  Representatives have vertices 0..n-1 and edges 0..m-1.
    """
    level = {canonical_key(Multigraph(1, [])): Multigraph(1, [])}
    out = list(level.values())
    for m in range(1, max_edges + 1):
        nxt = {}
        for g in level.values():
            n = g.vertex_count
            base = [(e, u, v) for e, (u, v) in g.edges.items()]
            options = [(u, v) for u in range(n) for v in range(u, n)]
            options += [(u, n) for u in range(n)]
            for u, v in options:
                h = Multigraph(max(n, v + 1), base + [(m - 1, u, v)])
                key = canonical_key(h, budget=10 ** 6)
                if key not in nxt:
                    nxt[key] = h
        level = nxt
        out.extend(level[k] for k in sorted(level))
    return out


# ---------------------------------------------------------------------------
# text format


def parse_graph(text: str) -> Multigraph:
    """Parse the ``v <count>`` / ``e <id> <u> <v> [label]`` format."""
    count = None
    edges, labels = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v":
                if count is not None:
                    raise GraphError(f"line {lineno}: repeated vertex count", "parse")
                count = int(parts[1])
            elif parts[0] == "e":
                e, u, v = int(parts[1]), int(parts[2]), int(parts[3])
                edges.append((e, u, v))
                if len(parts) > 4:
                    labels[e] = parts[4]
            else:
                raise GraphError(f"line {lineno}: unknown record {parts[0]!r}", "parse")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: cannot parse {raw!r}", "parse") from None
    if count is None:
        raise GraphError("missing 'v <count>' line", "parse")
    g = Multigraph(count, edges, labels)
    if sorted(g.edges) != list(range(len(edges))):
        raise GraphError("edge ids must be 0..m-1 without gaps", "bad_edge_id")
    return g


def format_graph(g: Multigraph) -> str:
    g = g.compact() if list(g.vertices) != list(range(g.vertex_count)) else g
    lines = [f"v {g.vertex_count}"]
    for e, (u, v) in g.edges.items():
        lab = g.labels.get(e)
        lines.append(f"e {e} {u} {v}" + (f" {lab}" if lab else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# named graphs used throughout the tests and demos


def g0() -> Multigraph:
    """Triangle on vertices 0, 1, 2 whose side 0-1 is doubled (edges a and d)."""
    return Multigraph(3, [(0, 0, 1), (1, 0, 2), (2, 1, 2), (3, 0, 1)],
                      {0: "a", 1: "b", 2: "c", 3: "d"})


def k3() -> Multigraph:
    return Multigraph(3, [(0, 0, 1), (1, 1, 2), (2, 0, 2)], {0: "a", 1: "b", 2: "c"})


def single_loop() -> Multigraph:
    return Multigraph(1, [(0, 0, 0)])


def single_isthmus() -> Multigraph:
    return Multigraph(2, [(0, 0, 1)])


def g1() -> Multigraph:
    """Six vertices named 1..6 (stored as 0..5) with a loop at 5."""
    pairs = [(1, 4), (4, 6), (2, 4), (3, 5), (1, 2), (5, 5), (1, 6)]
    return Multigraph(6, [(i, u - 1, v - 1) for i, (u, v) in enumerate(pairs)],
                      {i: f"{u}{v}" for i, (u, v) in enumerate(pairs)})
