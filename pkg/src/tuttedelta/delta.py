"""Activities driven by a decision tree.

Every edge of a subgraph ``S`` receives one of four types while the graph
is eaten edge by edge in the order dictated by the decision tree:

* ``Se`` standard edge outside ``S`` (deleted, go left),
* ``L``  loop (deleted, go left),
* ``Si`` standard edge inside ``S`` (contracted, go right),
* ``I``  isthmus (contracted, go right).

``L`` and ``I`` edges are the active ones.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .decision import LEFT, RIGHT, DecisionTree, DecisionTreeError, FunctionDecisionTree
from .graph import (GraphError, Multigraph, _DSU, bits, components, enumerate_spanning_forests,
                    enumerate_spanning_trees, fundamental_cocycle, fundamental_cycle,
                    is_spanning_tree, mask_of, popcount, subsets)
from .poly import BivariatePolynomial

SE, L, SI, I = "Se", "L", "Si", "I"
DIRECTION = {SE: LEFT, L: LEFT, SI: RIGHT, I: RIGHT}
PARTITION_LIMIT = 20
EQUIVALENCE_LIMIT = 12
SEARCH_LIMIT = 4


@dataclass(frozen=True)
class Typing:
    """Result of the typing algorithm for one subgraph."""

    types: dict            # edge id -> type
    history: tuple         # ((edge, type), ...) in visit order

    @property
    def order(self) -> tuple:
        return tuple(e for e, _ in self.history)

    @property
    def path(self) -> tuple:
        return tuple(DIRECTION[t] for _, t in self.history)

    def of_type(self, *kinds) -> int:
        return mask_of(e for e, t in self.types.items() if t in kinds)

    @property
    def active(self) -> int:
        return self.of_type(L, I)

    @property
    def internal_active(self) -> int:
        return self.of_type(I)

    @property
    def external_active(self) -> int:
        return self.of_type(L)


class _Minor:
    """The graph H of the typing algorithm: G with some edges contracted
    and some removed, tracked through a contraction union-find."""

    __slots__ = ("g", "alive", "contracted")

    def __init__(self, g):
        self.g = g
        self.alive = g.full_mask
        self.contracted = 0

    def _dsu(self, extra):
        d = _DSU(self.g.vertices)
        for f in bits(self.contracted | extra):
            d.union(*self.g.edges[f])
        return d

    def is_loop(self, e):
        u, v = self.g.edges[e]
        d = self._dsu(0)
        return d.find(u) == d.find(v)

    def is_isthmus(self, e):
        if self.is_loop(e):
            return False
        u, v = self.g.edges[e]
        d = self._dsu(self.alive & ~(1 << e))
        return d.find(u) != d.find(v)

    def delete(self, e):
        self.alive &= ~(1 << e)

    def contract(self, e):
        self.alive &= ~(1 << e)
        self.contracted |= 1 << e


def assign_types(g: Multigraph, delta: DecisionTree, s: int,
                 delete_loops: bool = True, contract_isthmuses: bool = True) -> Typing:
    """Type every edge of ``g`` for the subgraph ``s``.

    The two flags choose whether loops are removed and isthmuses
    contracted once typed; the output does not depend on them.
    """
    if s & ~g.full_mask:
        raise GraphError("subset mentions edges that are not in the graph", "bad_subset")
    h = _Minor(g)
    path = []
    seen = set()
    types, hist = {}, []
    for _ in range(g.edge_count):
        e = delta.label(tuple(path))
        if e in seen or e not in g.edges:
            raise DecisionTreeError(f"label {e} repeats or is unknown along {tuple(path)}")
        seen.add(e)
        inside = bool(s >> e & 1)
        if h.is_loop(e):
            t = L
            if delete_loops:
                h.delete(e)
        elif h.is_isthmus(e):
            t = I
            if contract_isthmuses:
                h.contract(e)
        elif not inside:
            t = SE
            h.delete(e)
        else:
            t = SI
            h.contract(e)
        types[e] = t
        hist.append((e, t))
        path.append(DIRECTION[t])
    return Typing(types, tuple(hist))


def _tree_check(g, t):
    if not is_spanning_tree(g, t) or t & ~g.full_mask:
        raise GraphError("expected a spanning tree", "not_spanning_tree")


def delta_active(g: Multigraph, delta: DecisionTree, t: int) -> int:
    _tree_check(g, t)
    return assign_types(g, delta, t).active


def split_active(t: int, active: int):
    """(internal actives, external actives) of an active set for tree t."""
    return active & t, active & ~t


def internal_active_alg3(g: Multigraph, delta: DecisionTree, t: int) -> int:
    """Internal actives without ever contracting: only external edges are
    deleted, and a tree edge is active when it is an isthmus at its visit."""
    _tree_check(g, t)
    h = _Minor(g)
    path = []
    out = 0
    for _ in range(g.edge_count):
        e = delta.label(tuple(path))
        if not t >> e & 1:
            h.delete(e)
            path.append(LEFT)
        else:
            path.append(RIGHT)
            if h.is_isthmus(e):
                out |= 1 << e
    return out


def delta_ordering(g: Multigraph, delta: DecisionTree, s: int) -> tuple:
    """Visit order of the edges for ``s``."""
    return assign_types(g, delta, s).order


def tree_ordering(g: Multigraph, delta: DecisionTree, t: int) -> tuple:
    """Shortcut for spanning trees: go left on external, right on internal edges."""
    path, out = [], []
    for _ in range(g.edge_count):
        e = delta.label(tuple(path))
        out.append(e)
        path.append(RIGHT if t >> e & 1 else LEFT)
    return tuple(out)


def tutte_via_delta(g: Multigraph, delta: DecisionTree) -> BivariatePolynomial:
    total = Counter()
    for t in enumerate_spanning_trees(g):
        ty = assign_types(g, delta, t)
        total[(popcount(ty.internal_active), popcount(ty.external_active))] += 1
    return BivariatePolynomial(total)


def canonical_tree(g: Multigraph, delta: DecisionTree, s: int) -> int:
    """Edges of type Si or I: the spanning tree equivalent to ``s``."""
    return assign_types(g, delta, s).of_type(SI, I)


@dataclass
class Interval:
    tree: int
    low: int
    high: int

    def __contains__(self, s: int) -> bool:
        return s & self.low == self.low and s & ~self.high == 0

    @property
    def size(self) -> int:
        return 1 << popcount(self.high & ~self.low)


def interval_partition(g: Multigraph, delta: DecisionTree, check: bool = True) -> list:
    """The intervals [T - I(T), T + L(T)] over spanning trees T.

    With ``check`` the intervals are verified to be pairwise disjoint and to
    cover every subgraph, and each subgraph's canonical tree is verified
    to index the interval containing it.
    """
    if g.edge_count > PARTITION_LIMIT:
        raise GraphError(f"partition limited to {PARTITION_LIMIT} edges", "size_limit")
    out = []
    for t in enumerate_spanning_trees(g):
        ty = assign_types(g, delta, t)
        out.append(Interval(t, t & ~ty.internal_active, t | ty.external_active))
    if check:
        if sum(iv.size for iv in out) != 1 << g.edge_count:
            raise AssertionError("interval sizes do not add up to 2^m")
        where = {iv.tree: iv for iv in out}
        for s in subsets(g.full_mask):
            hits = [iv for iv in out if s in iv]
            if len(hits) != 1:
                raise AssertionError(f"subgraph {s:b} lies in {len(hits)} intervals")
            if s not in where[canonical_tree(g, delta, s)]:
                raise AssertionError(f"canonical tree of {s:b} does not index its interval")
    return out


def equivalence_props_check(g: Multigraph, delta: DecisionTree) -> dict:
    """Check, on all pairs of subgraphs, that these statements coincide:
    same history; same interval; same Se and Si sets; S xor S' inside Act(S);
    S' = S xor R for some R inside Act(S)."""
    if g.edge_count > EQUIVALENCE_LIMIT:
        raise GraphError(f"equivalence check limited to {EQUIVALENCE_LIMIT} edges", "size_limit")
    parts = interval_partition(g, delta)
    info = {}
    for s in subsets(g.full_mask):
        ty = assign_types(g, delta, s)
        part = next(i for i, iv in enumerate(parts) if s in iv)
        info[s] = (ty.history, part, ty.of_type(SE), ty.of_type(SI), ty.active)
    failures = []
    pairs = 0
    for s, (hs, ps, se, si, act) in info.items():
        for s2, (hs2, ps2, se2, si2, _) in info.items():
            pairs += 1
            v = [hs == hs2, ps == ps2, (se, si) == (se2, si2),
                 (s ^ s2) & ~act == 0,
                 any(s2 == s ^ r for r in subsets(act))]
            if len(set(v)) != 1:
                failures.append((s, s2, v))
    return {"pairs": pairs, "failures": failures, "ok": not failures}


def eval_descriptions(g: Multigraph, delta: DecisionTree) -> dict:
    """The forest, connected-subgraph and all-subgraph expansions.

    Returns a dict of three :class:`BivariatePolynomial` (the third is
    scaled back to integers by checking the halves cancel)."""
    if g.edge_count > PARTITION_LIMIT:
        raise GraphError(f"descriptions limited to {PARTITION_LIMIT} edges", "size_limit")
    base = components(g, g.full_mask)
    X, Y = BivariatePolynomial.X, BivariatePolynomial.Y
    forests = BivariatePolynomial()
    connected = BivariatePolynomial()
    halves = {}
    nv = g.vertex_count
    for s in subsets(g.full_mask):
        ty = assign_types(g, delta, s)
        i, l = popcount(ty.internal_active), popcount(ty.external_active)
        c = components(g, s)
        cyc = c + popcount(s) - nv
        if cyc == 0:
            forests = forests + (X - 1) ** (c - base) * Y ** l
        if c == base:
            connected = connected + X ** i * (Y - 1) ** cyc
        halves[(i, l)] = halves.get((i, l), 0) + Fraction(1, 2 ** (i + l))
    if any(v.denominator != 1 for v in halves.values()):
        raise AssertionError("all-subgraph expansion has non-integer coefficients")
    subgraphs = BivariatePolynomial({k: int(v) for k, v in halves.items()})
    return {"forests": forests, "connected": connected, "subgraphs": subgraphs}


def interval_contribution(g: Multigraph, iv: Interval) -> BivariatePolynomial:
    """Sum of (x-1)^(cc-1) (y-1)^cycl over an interval."""
    X, Y = BivariatePolynomial.X, BivariatePolynomial.Y
    base = components(g, g.full_mask)
    total = BivariatePolynomial()
    free = iv.high & ~iv.low
    for r in subsets(free):
        s = iv.low | r
        c = components(g, s)
        total = total + (X - 1) ** (c - base) * (Y - 1) ** (c + popcount(s) - g.vertex_count)
    return total


# ---------------------------------------------------------------------------
# properties checked by the test-suite


def maximality_check(g: Multigraph, delta: DecisionTree) -> bool:
    """Active edges of each spanning tree are exactly those that come last in
    their fundamental cycle (external) or cocycle (internal)."""
    for t in enumerate_spanning_trees(g):
        ty = assign_types(g, delta, t)
        rank = {e: k for k, e in enumerate(ty.order)}
        for e in g.edges:
            fund = fundamental_cocycle(g, t, e) if t >> e & 1 else fundamental_cycle(g, t, e)
            last = max(bits(fund), key=rank.__getitem__) == e
            if last != bool(ty.active >> e & 1):
                return False
    return True


def variant_independence_check(g: Multigraph, delta: DecisionTree) -> bool:
    for s in subsets(g.full_mask):
        ref = assign_types(g, delta, s)
        for dl, ci in itertools.product((True, False), repeat=2):
            if assign_types(g, delta, s, dl, ci) != ref:
                return False
    return True


def witness_check(g: Multigraph, delta: DecisionTree) -> bool:
    """Each L edge closes a cycle of Si edges visited before it; each I edge
    cuts a cocycle of Se edges visited before it.  The cycle/cocycle counting
    rules hold when adding an L edge or removing an I edge."""
    for s in subsets(g.full_mask):
        ty = assign_types(g, delta, s)
        rank = {e: k for k, e in enumerate(ty.order)}
        si, se = ty.of_type(SI), ty.of_type(SE)
        for e, kind in ty.types.items():
            before = mask_of(f for f in g.edges if rank[f] < rank[e])
            if kind == L:
                u, v = g.edges[e]
                d = _DSU(g.vertices)
                for f in bits(si & before):
                    d.union(*g.edges[f])
                if d.find(u) != d.find(v):
                    return False
                s2 = s | 1 << e
                if s2 != s:
                    if components(g, s2) != components(g, s) or _cyc(g, s2) != _cyc(g, s) + 1:
                        return False
            elif kind == I:
                # removing every edge except the Se edges seen before must keep e a bridge
                keep = g.full_mask & ~(se & before) & ~(1 << e)
                u, v = g.edges[e]
                d = _DSU(g.vertices)
                for f in bits(keep):
                    d.union(*g.edges[f])
                if d.find(u) == d.find(v):
                    return False
                if s >> e & 1:
                    s2 = s & ~(1 << e)
                    if components(g, s2) != components(g, s) + 1 or _cyc(g, s2) != _cyc(g, s):
                        return False
    return True


def _cyc(g, s):
    return components(g, s) + popcount(s) - g.vertex_count


# ---------------------------------------------------------------------------
# tree-compatible order maps


def check_tree_compatible(g: Multigraph, order_map: dict):
    """Test whether an order map (tree mask -> tuple of edges) comes from
    a single decision tree.  Returns ``(True, None)`` or ``(False, witness)``
    with witness ``(T, T', k)``."""
    trees = list(order_map)
    m = g.edge_count
    for t in trees:
        phi = order_map[t]
        if sorted(phi) != sorted(g.edges):
            return False, (t, t, 0)
        for t2 in trees:
            phi2 = order_map[t2]
            for k in range(m):
                prefix = phi[:k]
                if all((t >> e & 1) == (t2 >> e & 1) for e in prefix):
                    if phi[:k + 1] != phi2[:k + 1]:
                        return False, (t, t2, k)
    return True, None


def build_decision_tree(g: Multigraph, order_map: dict) -> FunctionDecisionTree:
    """Decision tree whose (tree) orderings reproduce ``order_map``.

    Reachable nodes take the label prescribed by any tree following that
    path; other nodes take the smallest edge unused on their path.
    """
    ok, witness = check_tree_compatible(g, order_map)
    if not ok:
        raise GraphError(f"order map is not tree-compatible: witness {witness}",
                         "not_tree_compatible")
    table = {}
    for t, phi in order_map.items():
        path = ()
        for e in phi:
            table[path] = e
            path = path + (RIGHT if t >> e & 1 else LEFT,)

    def fn(path):
        if path in table:
            return table[path]
        used = {tree.label(path[:k]) for k in range(len(path))}
        return min(e for e in g.edges if e not in used)

    tree = FunctionDecisionTree(g.edges, fn)
    return tree


# ---------------------------------------------------------------------------
# forest activity


def forest_active(g: Multigraph, delta: DecisionTree, s: int) -> int:
    """Edges that are loops when visited, where only non-loop edges of ``s``
    get contracted and nothing is ever deleted."""
    h = _Minor(g)
    path = []
    out = 0
    for _ in range(g.edge_count):
        e = delta.label(tuple(path))
        if h.is_loop(e):
            out |= 1 << e
            path.append(LEFT)
        elif s >> e & 1:
            h.contract(e)
            path.append(RIGHT)
        else:
            path.append(LEFT)
    return out


def forest_tutte(g: Multigraph, delta: DecisionTree) -> BivariatePolynomial:
    X, Y = BivariatePolynomial.X, BivariatePolynomial.Y
    base = components(g, g.full_mask)
    total = BivariatePolynomial()
    for f in enumerate_spanning_forests(g):
        total = total + (X - 1) ** (components(g, f) - base) * Y ** popcount(forest_active(g, delta, f))
    return total


def forest_interval_check(g: Multigraph, delta: DecisionTree) -> bool:
    """The intervals [F, F + eps(F)] over spanning forests partition 2^E."""
    seen = 0
    for f in enumerate_spanning_forests(g):
        eps = forest_active(g, delta, f)
        if eps & f:
            return False
        for r in subsets(eps):
            s = f | r
            if seen >> s & 1:
                return False
            seen |= 1 << s
    return seen == (1 << (1 << g.edge_count)) - 1 if g.edge_count else seen == 1


# ---------------------------------------------------------------------------
# planar duality


def duality_check(cmap, delta: DecisionTree, s: int) -> dict:
    """Compare Delta-actives of ``s`` in the map's graph with the actives of
    the complement of ``s`` in the dual graph under the mirrored tree."""
    from .combmap import dual_map, faces_genus, underlying_graph

    if faces_genus(cmap)[1] != 0:
        raise GraphError("duality needs a planar map", "not_planar")
    g = underlying_graph(cmap)
    gd = underlying_graph(dual_map(cmap))
    primal = assign_types(g, delta, s)
    dual = assign_types(gd, delta.mirrored(), g.full_mask & ~s)
    swap = {SE: SI, SI: SE, L: I, I: L}
    ok = all(dual.types[e] == swap[t] for e, t in primal.types.items())
    return {"ok": ok and primal.active == dual.active,
            "primal_active": primal.active, "dual_active": dual.active}


# ---------------------------------------------------------------------------
# strongly descriptive activities


def _interval_mask(t, act, m):
    low, high = t & ~act, t | act
    out = 0
    for r in subsets(high & ~low):
        out |= 1 << (low | r)
    return out


def strongly_descriptive_search(g: Multigraph, tutte_poly: BivariatePolynomial | None = None) -> dict:
    """Exhaustively list the activities whose intervals partition the
    subgraphs and whose activity monomials sum to the Tutte polynomial, and
    compare them with the activities of all decision trees."""
    from .decision import all_decision_trees
    from .tutte import tutte as tutte_poly_of

    m = g.edge_count
    if m > SEARCH_LIMIT:
        raise GraphError(f"search limited to {SEARCH_LIMIT} edges", "size_limit")
    target = dict((tutte_poly or tutte_poly_of(g)).terms)
    trees = enumerate_spanning_trees(g)
    options = []
    for t in trees:
        opts = []
        for act in subsets(g.full_mask):
            mono = (popcount(act & t), popcount(act & ~t))
            opts.append((act, mono, _interval_mask(t, act, m)))
        opts.sort()
        options.append(opts)
    found = []
    full = (1 << (1 << m)) - 1

    def rec(i, covered, remaining, chosen):
        if i == len(trees):
            if covered == full and not any(remaining.values()):
                found.append(tuple(chosen))
            return
        for act, mono, iv in options[i]:
            if iv & covered or remaining.get(mono, 0) <= 0:
                continue
            remaining[mono] -= 1
            chosen.append(act)
            rec(i + 1, covered | iv, remaining, chosen)
            chosen.pop()
            remaining[mono] += 1

    rec(0, 0, dict(target), [])
    delta_tables = set()
    for dt in all_decision_trees(g.edges):
        delta_tables.add(tuple(assign_types(g, dt, t).active for t in trees))
    if m == 0:
        delta_tables.add(tuple(0 for _ in trees))
    found_set = set(found)
    has_standard = any(g.is_standard(e) for e in g.edges)
    conj2 = True
    for table in found:
        ever = 0
        for act in table:
            ever |= act
        if has_standard and ever == g.full_mask:
            conj2 = False
    return {
        "trees": trees,
        "activities": found,
        "delta_activities": sorted(delta_tables),
        "count": len(found),
        "conjecture1": found_set == delta_tables,
        "every_delta_activity_found": delta_tables <= found_set,
        "has_standard_edge": has_standard,
        "conjecture2": conj2,
    }
