"""Four classical families of edge activities and their decision trees.

* ordering activity (a fixed linear order of the edges),
* embedding activity (the tour of a spanning tree in a rooted map),
* DFS activity (greatest-neighbour depth-first search),
* blossoming activity (the edge-erasing walk around a rooted map).

Each is computed from its own definition and also realised as the
activity of an explicit decision tree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .combmap import CombMap, MapError, faces_genus, mirror, motion_order, underlying_graph
from .decision import FunctionDecisionTree, constant_depth_tree
from .delta import assign_types, build_decision_tree
from .graph import (GraphError, Multigraph, _DSU, bits, enumerate_spanning_trees,
                    fundamental_cocycle, fundamental_cycle, is_forest, is_spanning_tree,
                    mask_of)


def _require_tree(g, t):
    if t & ~g.full_mask or not is_spanning_tree(g, t):
        raise GraphError("expected a spanning tree", "not_spanning_tree")


def _extreme_in_fundamental(g, t, rank, pick):
    out = 0
    for e in g.edges:
        fund = fundamental_cocycle(g, t, e) if t >> e & 1 else fundamental_cycle(g, t, e)
        if pick(bits(fund), key=rank.__getitem__) == e:
            out |= 1 << e
    return out


# ---------------------------------------------------------------------------
# ordering activity


def ordering_activity(g: Multigraph, order, t: int) -> int:
    """Edges minimal in their fundamental cycle or cocycle for ``order``
    (a sequence listing the edges from smallest to largest)."""
    _require_tree(g, t)
    rank = {e: k for k, e in enumerate(order)}
    return _extreme_in_fundamental(g, t, rank, min)


def delta_ord(g: Multigraph, order) -> FunctionDecisionTree:
    """Decision tree whose depth-k nodes are labelled by the (m-k)-th edge."""
    return constant_depth_tree(g.edges, list(reversed(list(order))))


# ---------------------------------------------------------------------------
# embedding activity


def embedding_activity(m: CombMap, t: int) -> int:
    """Edges minimal in their fundamental cycle or cocycle for the tour order."""
    g = underlying_graph(m)
    rank = motion_order(m, t).edge_rank
    return _extreme_in_fundamental(g, t, rank, min)


def mirror_max_activity(m: CombMap, t: int) -> int:
    """Edges maximal in their fundamental cycle or cocycle for the tour order
    of the mirror map."""
    g = underlying_graph(m)
    rank = motion_order(mirror(m), t).edge_rank
    return _extreme_in_fundamental(g, t, rank, max)


def embedding_as_delta(m: CombMap) -> FunctionDecisionTree:
    g = underlying_graph(m)
    mm = mirror(m)
    order_map = {t: motion_order(mm, t).edge_order for t in enumerate_spanning_trees(g)}
    return build_decision_tree(g, order_map)


# ---------------------------------------------------------------------------
# DFS activity (simple graphs; loops allowed)


def _require_simple(g):
    if not g.is_simple():
        raise GraphError("DFS activity needs a graph without parallel edges", "parallel_edges")


def _edge_between(g):
    table = {}
    for e, (u, v) in g.edges.items():
        table[(u, v)] = table[(v, u)] = e
    return table


def dfs_forest(g: Multigraph, s: int, with_order: bool = False):
    """Greatest-neighbour DFS forest of the spanning subgraph ``s``."""
    _require_simple(g)
    between = _edge_between(g)
    nbrs = {v: set() for v in g.vertices}
    for e in bits(s):
        u, v = g.edges[e]
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    visited = []
    seen = set()
    forest = 0
    while len(seen) < g.vertex_count:
        start = min(v for v in g.vertices if v not in seen)
        seen.add(start)
        visited.append(start)
        while True:
            cands = [w for w in visited if nbrs[w] - seen]
            if not cands:
                break
            v = cands[-1]
            while nbrs[v] - seen:
                u = max(nbrs[v] - seen)
                seen.add(u)
                visited.append(u)
                forest |= 1 << between[(u, v)]
                v = u
    return (forest, visited) if with_order else forest


def dfs_active(g: Multigraph, f: int) -> int:
    """External edges e with DFS(f + e) = f (definitional test)."""
    _require_simple(g)
    if not is_forest(g, f):
        raise GraphError("expected a spanning forest", "not_forest")
    out = 0
    for e in g.edges:
        if not f >> e & 1 and dfs_forest(g, f | 1 << e) == f:
            out |= 1 << e
    return out


def dfs_active_inversions(g: Multigraph, f: int) -> int:
    """Same set via ancestry: loops, and edges {u, v} with v a descendant of
    u whose path from u starts with a child w greater than v."""
    _require_simple(g)
    parent = {}
    adj = {v: [] for v in g.vertices}
    for e in bits(f):
        a, b = g.edges[e]
        adj[a].append(b)
        adj[b].append(a)
    seen = set()
    for r in sorted(g.vertices):
        if r in seen:
            continue
        parent[r] = None
        seen.add(r)
        stack = [r]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    parent[y] = x
                    stack.append(y)

    def path_up(v):
        out = [v]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return out

    out = 0
    for e, (a, b) in g.edges.items():
        if f >> e & 1:
            continue
        if a == b:
            out |= 1 << e
            continue
        for u, v in ((a, b), (b, a)):
            up = path_up(v)
            if u in up[1:]:
                w = up[up.index(u) - 1]
                if w > v:
                    out |= 1 << e
    return out


def dfs_order_map(g: Multigraph, s: int) -> tuple:
    """Visit order of all edges of G by the DFS that only follows edges of ``s``."""
    _require_simple(g)
    inc = {v: [] for v in g.vertices}
    for e, (u, v) in g.edges.items():
        inc[u].append((v, e))
        if u != v:
            inc[v].append((u, e))
    visited_v = []
    seen_v = set()
    seen_e = set()
    order = []

    def unvisited_edges(v):
        return [(u, e) for u, e in inc[v] if e not in seen_e]

    while len(seen_v) < g.vertex_count:
        start = min(v for v in g.vertices if v not in seen_v)
        seen_v.add(start)
        visited_v.append(start)
        while True:
            cands = [w for w in visited_v if unvisited_edges(w)]
            if not cands:
                break
            v = cands[-1]
            while unvisited_edges(v):
                u, e = max(unvisited_edges(v))
                order.append(e)
                seen_e.add(e)
                if s >> e & 1 and u not in seen_v:
                    seen_v.add(u)
                    visited_v.append(u)
                    v = u
    return tuple(order)


def dfs_as_delta(g: Multigraph) -> FunctionDecisionTree:
    order_map = {t: dfs_order_map(g, t) for t in enumerate_spanning_trees(g)}
    return build_decision_tree(g, order_map)


# ---------------------------------------------------------------------------
# blossoming activity


@dataclass
class BlossomWalk:
    tree: int                      # surviving edges (a spanning tree)
    first_visit: tuple             # edges in order of first visit
    isthmus_at_first_visit: int    # bitmask
    deletions: list = field(default_factory=list)   # (edge, from_half, to_half)
    steps: int = 0

    def charges(self, m: CombMap) -> dict:
        """Net charge per vertex: -1 where a deleted edge was left, +1 where
        it was arrived at."""
        ch = {v: 0 for v in range(len(m.vertices()))}
        for _, h, k in self.deletions:
            ch[m.vertex_of(h)] -= 1
            ch[m.vertex_of(k)] += 1
        return ch


def blossom_walk(m: CombMap, f: int) -> BlossomWalk:
    """Walk around the map from the root, following sigma o alpha in the
    current map and erasing each visited edge that is outside ``f`` and not
    an isthmus of the current map."""
    g = underlying_graph(m)
    if f & ~g.full_mask or not is_forest(g, f):
        raise GraphError("expected a spanning forest", "not_forest")
    sigma = dict(m.sigma)
    alpha = m.alpha
    alive = g.full_mask
    first, visited = [], 0
    isth_first = 0
    deletions = []
    h = m.root
    steps = 0
    limit = 4 * len(sigma) + 4

    def isthmus(e):
        u, v = g.edges[e]
        if u == v:
            return False
        d = _DSU(g.vertices)
        for x in bits(alive & ~(1 << e)):
            d.union(*g.edges[x])
        return d.find(u) != d.find(v)

    while visited != g.full_mask:
        steps += 1
        if steps > limit:
            raise RuntimeError("blossoming walk did not terminate")
        e = m.edge(h)
        ist = isthmus(e)
        if not visited >> e & 1:
            visited |= 1 << e
            first.append(e)
            if ist:
                isth_first |= 1 << e
        k = alpha[h]
        nxt = sigma[k]
        if not ist and not f >> e & 1:
            deletions.append((e, h, k))
            while nxt in (h, k):
                nxt = sigma[nxt]
                if nxt == k:
                    nxt = None
                    break
            for x in (h, k):
                prev = next(p for p, q in sigma.items() if q == x)
                sigma[prev] = sigma[x]
                del sigma[x]
            alive &= ~(1 << e)
            if nxt is None:
                break
        h = nxt
    return BlossomWalk(alive, tuple(first), isth_first, deletions, steps)


def blossoming_tau(m: CombMap, f: int) -> int:
    return blossom_walk(m, f).tree


def blossoming_internal_active(m: CombMap, t: int, method: str = "isthmus") -> int:
    """Internal blossoming-active edges of the spanning tree ``t``.

    ``method`` is ``"definition"`` (tau(t - e) = t), ``"isthmus"`` (isthmus of
    the current map at its first visit) or ``"delta"`` (via the decision tree
    built from first-visit orders).
    """
    g = underlying_graph(m)
    _require_tree(g, t)
    if method == "definition":
        return mask_of(e for e in bits(t) if blossoming_tau(m, t & ~(1 << e)) == t)
    if method == "isthmus":
        return blossom_walk(m, t).isthmus_at_first_visit & t
    if method == "delta":
        return assign_types(g, blossoming_full(m), t).internal_active
    raise ValueError(f"unknown method {method!r}")


def blossoming_order_map(m: CombMap) -> dict:
    g = underlying_graph(m)
    return {t: blossom_walk(m, t).first_visit for t in enumerate_spanning_trees(g)}


def blossoming_full(m: CombMap) -> FunctionDecisionTree:
    """Decision tree whose activity is the blossoming activity."""
    return build_decision_tree(underlying_graph(m), blossoming_order_map(m))


def hanging_side(g: Multigraph, t: int, e: int, root_vertex: int) -> set:
    """Vertices of t - e not in the component of ``root_vertex``."""
    d = _DSU(g.vertices)
    for x in bits(t & ~(1 << e)):
        d.union(*g.edges[x])
    r = d.find(root_vertex)
    return {v for v in g.vertices if d.find(v) != r}


def charge_criterion(m: CombMap, t: int, e: int) -> dict:
    """Charge of the subtree hanging below the tree edge ``e`` after the
    charged walk, together with the activity of ``e``."""
    g = underlying_graph(m)
    _require_tree(g, t)
    if not t >> e & 1:
        raise GraphError("charge criterion applies to tree edges", "wrong_side")
    walk = blossom_walk(m, t)
    charges = walk.charges(m)
    side = hanging_side(g, t, e, m.vertex_of(m.root))
    charge = sum(charges[v] for v in side)
    active = bool(walk.isthmus_at_first_visit >> e & 1)
    return {"active": active, "subtree_charge": charge}


def find_charge_counterexample(max_edges: int = 3):
    """Search genus-1 maps for an inactive tree edge whose subtree charge is 0 or 1."""
    from .combmap import enumerate_rooted_maps

    for n in range(1, max_edges + 1):
        for m in enumerate_rooted_maps(n, genus=1):
            g = underlying_graph(m)
            for t in enumerate_spanning_trees(g):
                for e in bits(t):
                    r = charge_criterion(m, t, e)
                    if not r["active"] and r["subtree_charge"] in (0, 1):
                        return m, t, e, r
    return None
