"""Closure and opening between blossoming trees and forested planar maps.

A blossoming tree is a plane tree whose corners may carry dangling
half-edges: buds (charge -1) and leaves (charge +1).  It is stored like a
map whose ``alpha`` is only defined on the paired (tree) half-edges.  The
root is a corner, named by the half-edge that follows it.

Opening a planar map with a spanning forest and a marked face repeatedly
cuts the non-forest edges that are not isthmuses and that border the
marked face, turning each into a bud followed by a leaf.  Closing matches
every bud with the leaf that follows it like a pair of parentheses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import sympy

from .combmap import CombMap, MapError, faces_genus, underlying_graph
from .graph import GraphError, _DSU, bits, components, is_forest, popcount

BUD, LEAF = "B", "L"
_u = sympy.Symbol("u")


class BlossomError(GraphError):
    pass


@dataclass
class BlossomTree:
    sigma: dict                 # rotation on every half-edge, dangling ones included
    alpha: dict                 # involution on tree half-edges only
    kind: dict                  # dangling half-edge -> BUD or LEAF
    root: Optional[int]         # root corner (None for a bare vertex)
    edge_ids: dict = field(default_factory=dict)   # half-edge -> edge id
    internal: frozenset = frozenset()               # ids of tree edges in the forest

    # -- structure ------------------------------------------------------
    def phi(self, h):
        return self.sigma[self.alpha.get(h, h)]

    def vertices(self):
        if not self.sigma:
            return [()]
        seen, out = set(), []
        for h in sorted(self.sigma):
            if h in seen:
                continue
            cyc = [h]
            seen.add(h)
            k = self.sigma[h]
            while k != h:
                cyc.append(k)
                seen.add(k)
                k = self.sigma[k]
            out.append(tuple(cyc))
        return out

    def vertex_of(self, h):
        for i, c in enumerate(self.vertices()):
            if h in c:
                return i
        raise KeyError(h)

    def tree_edges(self):
        return sorted({self.edge_ids[h] for h in self.alpha})

    def halves(self, e):
        return tuple(sorted(h for h in self.alpha if self.edge_ids[h] == e))

    def contour(self):
        """Half-edges in the order of the walk around the tree from the root corner."""
        if self.root is None:
            return []
        out = [self.root]
        h = self.phi(self.root)
        while h != self.root:
            out.append(h)
            h = self.phi(h)
        return out

    def is_tree(self) -> bool:
        nv = len(self.vertices())
        return len(self.alpha) // 2 == nv - 1 and len(self.contour()) == len(self.sigma)

    # -- charges --------------------------------------------------------
    def vertex_charges(self):
        ch = [0] * len(self.vertices())
        vo = {}
        for i, c in enumerate(self.vertices()):
            for h in c:
                vo[h] = i
        for h, k in self.kind.items():
            ch[vo[h]] += -1 if k == BUD else 1
        return ch, vo

    def total_charge(self) -> int:
        return sum(self.vertex_charges()[0])

    def subtree_charges(self) -> dict:
        """For every tree edge, the charge of the part not holding the root."""
        ch, vo = self.vertex_charges()
        root_v = vo[self.root] if self.root is not None else 0
        nv = len(ch)
        pairs = {}
        for h in self.alpha:
            pairs.setdefault(self.edge_ids[h], []).append(vo[h])
        out = {}
        for e in pairs:
            d = _DSU(range(nv))
            for f, (a, b) in pairs.items():
                if f != e:
                    d.union(a, b)
            r = d.find(root_v)
            out[e] = sum(ch[v] for v in range(nv) if d.find(v) != r)
        return out

    def violations(self, enriched: bool = True) -> list:
        """Reasons why this is not a valid (enriched) T-tree; empty when valid."""
        out = []
        if not self.is_tree():
            out.append("not a plane tree")
        if self.total_charge() != 0:
            out.append("total charge is not zero")
        for e, c in self.subtree_charges().items():
            if enriched and e in self.internal:
                continue
            if c not in (0, 1):
                out.append(f"edge {e} carries a subtree of charge {c}")
        return out

    def is_valid(self, enriched: bool = True) -> bool:
        return not self.violations(enriched)

    # -- text form --------------------------------------------------------
    def to_word(self) -> str:
        if self.root is None:
            return ""

        def around(start, stop):
            out = []
            h = start
            while True:
                if h in self.kind:
                    out.append(self.kind[h])
                else:
                    k = self.alpha[h]
                    out.append("i(" if self.edge_ids[h] in self.internal else "x(")
                    nxt = self.sigma[k]
                    if nxt != k:
                        out.append(around(nxt, k))
                    out.append(")")
                h = self.sigma[h]
                if h == stop:
                    return "".join(out)

        return around(self.root, self.root)


def parse_word(word: str) -> BlossomTree:
    """Inverse of :meth:`BlossomTree.to_word`.

    Grammar: ``vertex := item*``, ``item := 'B' | 'L' | ('i'|'x') '(' vertex ')'``.
    """
    sigma, alpha, kind, ids = {}, {}, {}, {}
    internal = set()
    counter = [0]
    edge_counter = [0]
    pos = 0
    word = "".join(word.split())

    def new():
        counter[0] += 1
        return counter[0] - 1

    def vertex(parent_half):
        nonlocal pos
        ring = [] if parent_half is None else [parent_half]
        while pos < len(word) and word[pos] != ")":
            c = word[pos]
            if c in (BUD, LEAF):
                h = new()
                kind[h] = c
                ring.append(h)
                pos += 1
            elif c in "ix":
                if pos + 1 >= len(word) or word[pos + 1] != "(":
                    raise BlossomError(f"expected '(' after {c!r} at {pos}", "parse")
                h, k = new(), new()
                e = edge_counter[0]
                edge_counter[0] += 1
                alpha[h], alpha[k] = k, h
                ids[h] = ids[k] = e
                if c == "i":
                    internal.add(e)
                ring.append(h)
                pos += 2
                vertex(k)
                if pos >= len(word) or word[pos] != ")":
                    raise BlossomError("unbalanced parentheses", "parse")
                pos += 1
            else:
                raise BlossomError(f"unexpected character {c!r}", "parse")
        for i, h in enumerate(ring):
            sigma[h] = ring[(i + 1) % len(ring)]
        return ring

    ring = vertex(None)
    if pos != len(word):
        raise BlossomError("unbalanced parentheses", "parse")
    root = ring[0] if ring else None
    return BlossomTree(sigma, alpha, kind, root, ids, frozenset(internal))


# ---------------------------------------------------------------------------
# closure


@dataclass
class ClosedMap:
    map: CombMap
    forest: int
    marked_face: tuple     # the sigma o alpha cycle of the marked face

    def face_key(self):
        return frozenset(self.marked_face)


def theta_close(tree: BlossomTree, check: bool = True) -> ClosedMap:
    """Join every bud to the leaf that follows it along the outer face."""
    if check:
        bad = tree.violations(enriched=True)
        if bad:
            raise BlossomError("; ".join(bad), "malformed_tree")
    if tree.root is None:
        from .combmap import vertex_map
        return ClosedMap(vertex_map(), 0, ())
    word = tree.contour()
    alpha = dict(tree.alpha)
    stack = []
    level, best, best_pos = 0, None, 0
    for pos, h in enumerate(word):
        if best is None or level < best:
            best, best_pos = level, pos
        if tree.kind.get(h) == BUD:
            level += 1
        elif tree.kind.get(h) == LEAF:
            level -= 1
    # match cyclically, starting where the running level is lowest
    n = len(word)
    for step in range(n):
        h = word[(best_pos + step) % n]
        k = tree.kind.get(h)
        if k == BUD:
            stack.append(h)
        elif k == LEAF:
            if not stack:
                raise BlossomError("a leaf has no bud to close with", "malformed_tree")
            b = stack.pop()
            alpha[b], alpha[h] = h, b
    if stack:
        raise BlossomError("a bud has no leaf to close with", "malformed_tree")
    ids = dict(tree.edge_ids)
    fresh = max(ids.values(), default=-1) + 1
    for h in tree.kind:
        b, l = (h, alpha[h]) if tree.kind[h] == BUD else (alpha[h], h)
        if h != b:
            continue
        if b in ids and l in ids and ids[b] == ids[l]:
            continue
        ids[b] = ids[l] = fresh
        fresh += 1
    m = CombMap(dict(tree.sigma), alpha, tree.root, ids)
    anchor = word[best_pos]
    face = next(f for f in m.faces() if anchor in f)
    forest = 0
    for e in tree.internal:
        forest |= 1 << e
    return ClosedMap(m, forest, face)


# ---------------------------------------------------------------------------
# opening


def _face_cycle(sigma, alpha, start):
    out = [start]
    h = sigma[alpha.get(start, start)]
    while h != start:
        out.append(h)
        h = sigma[alpha.get(h, h)]
    return out


def theta_open(m: CombMap, forest: int, marked_face) -> BlossomTree:
    """Cut external non-isthmus edges along the marked face until none is left.

    ``marked_face`` is any half-edge of the face (the face is the
    ``sigma o alpha`` cycle through it) or a face tuple.  Every cut edge,
    oriented along the face walk, gives a bud on its first half and a leaf
    on its second.  When several such edges border the same inner face,
    only the one leaving the component of the root is cut.
    """
    if faces_genus(m)[1] != 0:
        raise MapError("opening needs a planar map", "not_planar")
    g = underlying_graph(m)
    if forest & ~g.full_mask or not is_forest(g, forest):
        raise GraphError("expected a spanning forest", "not_forest")
    anchor = marked_face[0] if isinstance(marked_face, (tuple, list)) else marked_face
    if anchor is None:
        return BlossomTree({}, {}, {}, None)
    sigma = dict(m.sigma)
    alpha = dict(m.alpha)
    kind = {}
    root_v = m.vertex_of(m.root)
    while True:
        outer = _face_cycle(sigma, alpha, anchor)
        on_outer = set(outer)
        cand = {}
        for h in outer:
            if h not in alpha or alpha[h] in on_outer:
                continue
            e = m.edge(h)
            if forest >> e & 1:
                continue
            inner = frozenset(_face_cycle(sigma, alpha, alpha[h]))
            cand.setdefault(inner, []).append(h)
        if not cand:
            break
        cuts = []
        for inner, hs in cand.items():
            if len(hs) == 1:
                cuts.append(hs[0])
                continue
            banned = {m.edge(h) for h in hs}
            d = _DSU(g.vertices)
            for x in alpha:
                if m.edge(x) not in banned:
                    d.union(m.vertex_of(x), m.vertex_of(alpha[x]))
            r = d.find(root_v)
            leaving = [h for h in hs if d.find(m.vertex_of(h)) == r]
            if len(leaving) != 1:
                raise RuntimeError("no unique edge leaves the root component")
            cuts.append(leaving[0])
        for h in cuts:
            k = alpha.pop(h)
            del alpha[k]
            kind[h], kind[k] = BUD, LEAF
    internal = frozenset(e for e in bits(forest))
    return BlossomTree(sigma, alpha, kind, m.root, dict(m.edge_ids), internal)


def roundtrip_ok(m: CombMap, forest: int, face_anchor: int) -> bool:
    tree = theta_open(m, forest, face_anchor)
    if not tree.is_valid():
        return False
    closed = theta_close(tree)
    face = next(f for f in m.faces() if face_anchor in f)
    return (closed.map.sigma == m.sigma and closed.map.alpha == m.alpha
            and closed.map.root == m.root and closed.forest == forest
            and closed.face_key() == frozenset(face))


def statistics_ok(m: CombMap, forest: int, tree: BlossomTree) -> bool:
    """Leaves count the unmarked faces, vertex degrees and forest components
    survive the opening."""
    g = underlying_graph(m)
    leaves = sum(1 for k in tree.kind.values() if k == LEAF)
    buds = sum(1 for k in tree.kind.values() if k == BUD)
    tdeg = sorted(len(c) for c in tree.vertices())
    mdeg = sorted(len(c) for c in m.vertices())
    comp_tree = len(tree.vertices()) - len(tree.internal)
    return (leaves == len(m.faces()) - 1 and buds == leaves and tdeg == mdeg
            and comp_tree == components(g, forest))


# ---------------------------------------------------------------------------
# flips and stable classes


def flippable_edges(tree: BlossomTree) -> int:
    """Tree edges whose hanging subtree has charge 0 or 1 (as a bitmask)."""
    out = 0
    for e, c in tree.subtree_charges().items():
        if c in (0, 1):
            out |= 1 << e
    return out


def stable_class_gf(tree: BlossomTree, check: bool = True):
    """Sum of u^(number of components) over the forests that keep ``tree``
    a valid enriched T-tree.  Equals u (1 + u)^b with b flippable edges."""
    charges = tree.subtree_charges()
    edges = sorted(charges)
    nv = len(tree.vertices())
    forced = [e for e in edges if charges[e] not in (0, 1)]
    free = [e for e in edges if charges[e] in (0, 1)]
    total = 0
    for mask in range(1 << len(free)):
        size = len(forced) + popcount(mask)
        total += _u ** (nv - size)
    poly = sympy.Poly(sympy.expand(total), _u)
    if check:
        closed = sympy.Poly(sympy.expand(_u * (1 + _u) ** popcount(flippable_edges(tree))), _u)
        if poly != closed:
            raise AssertionError("stable class does not match u(1+u)^b")
    return poly


def all_trees_with_buds(max_edges: int):
    """Every blossoming tree whose closure has at most ``max_edges`` edges,
    obtained by opening the planar catalogue (one per map and face)."""
    from .combmap import planar_catalogue

    for m in planar_catalogue(max_edges):
        for face in m.faces():
            yield theta_open(m, 0, face[0])


def shape_word(tree: BlossomTree) -> str:
    """Word of the tree with the forest forgotten (every edge written ``x``)."""
    return tree.to_word().replace("i(", "x(")


def forest_gf_via_trees(m: CombMap, face_anchor: int):
    """Sum over spanning forests of u^(cc - 1), computed by grouping the
    opened trees into stable classes: each class contributes (1 + u)^b."""
    from .graph import enumerate_spanning_forests

    g = underlying_graph(m)
    classes = {}
    for f in enumerate_spanning_forests(g):
        tree = theta_open(m, f, face_anchor)
        classes.setdefault(shape_word(tree), tree)
    total = sum((1 + _u) ** popcount(flippable_edges(t)) for t in classes.values())
    return sympy.Poly(sympy.expand(total), _u)
