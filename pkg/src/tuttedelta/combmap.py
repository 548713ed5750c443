"""Rooted combinatorial maps.

A map is a set of half-edges with a rotation ``sigma`` (the cyclic order of
half-edges around each vertex) and a fixed-point-free involution ``alpha``
pairing half-edges into edges.  Faces are the cycles of ``sigma o alpha``.
A corner is named by the half-edge that follows it counterclockwise, i.e.
the corner between ``sigma^-1(h)`` and ``h``.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .graph import GraphError, Multigraph, bits


class MapError(GraphError):
    pass


class CombMap:
    """Immutable rooted map.  ``sigma`` and ``alpha`` are dicts on the
    half-edge set; ``edge_ids`` names each edge (shared by both halves)."""

    __slots__ = ("sigma", "alpha", "root", "edge_ids", "names", "_cache")

    def __init__(self, sigma, alpha, root: int, edge_ids: Optional[dict] = None,
                 names: Optional[dict] = None, check: bool = True):
        if not isinstance(sigma, dict):
            sigma = dict(enumerate(sigma))
        if not isinstance(alpha, dict):
            alpha = dict(enumerate(alpha))
        self.sigma = sigma
        self.alpha = alpha
        self.root = root
        if edge_ids is None:
            mins = sorted(min(h, alpha[h]) for h in alpha if h < alpha[h] or h == alpha[h])
            rank = {h: k for k, h in enumerate(mins)}
            edge_ids = {h: rank[min(h, alpha[h])] for h in alpha}
        self.edge_ids = edge_ids
        self.names = names or {}
        self._cache = {}
        if check:
            _validate(self)

    # -- construction helpers -----------------------------------------
    @classmethod
    def from_cycles(cls, cycles, pairs, root, names=None, **kw) -> "CombMap":
        sigma = {}
        for cyc in cycles:
            for i, h in enumerate(cyc):
                sigma[h] = cyc[(i + 1) % len(cyc)]
        alpha = {}
        for h, k in pairs:
            alpha[h], alpha[k] = k, h
        return cls(sigma, alpha, root, names=names, **kw)

    @property
    def half_edges(self) -> list:
        return sorted(self.sigma)

    @property
    def edge_count(self) -> int:
        return len(self.sigma) // 2

    def sigma_inv(self, h: int) -> int:
        inv = self._cache.get("sinv")
        if inv is None:
            inv = self._cache["sinv"] = {v: k for k, v in self.sigma.items()}
        return inv[h]

    def phi(self, h: int) -> int:
        """The half-edge that immediately follows ``h``: sigma(alpha(h))."""
        return self.sigma[self.alpha[h]]

    def edge(self, h: int) -> int:
        return self.edge_ids[h]

    def halves(self, e: int):
        hs = self._cache.get("halves")
        if hs is None:
            hs = {}
            for h in sorted(self.sigma):
                hs.setdefault(self.edge_ids[h], []).append(h)
            self._cache["halves"] = hs
        return tuple(hs[e])

    def name(self, h: int) -> str:
        return self.names.get(h, str(h))

    def cycles(self, perm: Callable[[int], int]) -> list:
        if not self.sigma:
            # the vertex map: one vertex, one face, no half-edges
            return [()]
        seen, out = set(), []
        for h in sorted(self.sigma):
            if h in seen:
                continue
            cyc = [h]
            seen.add(h)
            k = perm(h)
            while k != h:
                cyc.append(k)
                seen.add(k)
                k = perm(k)
            out.append(tuple(cyc))
        return out

    def vertices(self) -> list:
        """sigma-cycles, ordered by their least half-edge."""
        v = self._cache.get("vertices")
        if v is None:
            v = self._cache["vertices"] = self.cycles(self.sigma.__getitem__)
        return v

    def vertex_of(self, h: int) -> int:
        vo = self._cache.get("vertex_of")
        if vo is None:
            vo = {}
            for i, cyc in enumerate(self.vertices()):
                for x in cyc:
                    vo[x] = i
            self._cache["vertex_of"] = vo
        return vo[h]

    def faces(self) -> list:
        f = self._cache.get("faces")
        if f is None:
            f = self._cache["faces"] = self.cycles(self.phi)
        return f

    def face_of(self, h: int) -> int:
        fo = self._cache.get("face_of")
        if fo is None:
            fo = {}
            for i, cyc in enumerate(self.faces()):
                for x in cyc:
                    fo[x] = i
            self._cache["face_of"] = fo
        return fo[h]

    def genus(self) -> int:
        return faces_genus(self)[1]

    def degrees(self) -> list:
        return [len(c) for c in self.vertices()]

    def __eq__(self, other):
        return (isinstance(other, CombMap) and self.sigma == other.sigma
                and self.alpha == other.alpha and self.root == other.root)

    def __hash__(self):
        return hash((tuple(sorted(self.sigma.items())), self.root))

    def __repr__(self):
        vs = " ".join("(" + " ".join(self.name(h) for h in c) + ")" for c in self.vertices())
        return f"CombMap(sigma={vs}, root={self.name(self.root)})"


def _validate(m: CombMap):
    hs = set(m.sigma)
    if set(m.alpha) != hs:
        raise MapError("sigma and alpha act on different sets", "domain")
    if sorted(m.sigma.values()) != sorted(hs):
        raise MapError("sigma is not a permutation", "sigma_not_permutation")
    for h, k in m.alpha.items():
        if k not in hs or m.alpha.get(k) != h:
            raise MapError("alpha is not an involution", "alpha_not_involution")
        if k == h:
            raise MapError(f"alpha fixes half-edge {h}", "alpha_fixed_point")
    if not hs and m.root is None:
        return
    if m.root not in hs:
        raise MapError("root is not a half-edge", "bad_root")
    if set(m.edge_ids) != hs or any(m.edge_ids[h] != m.edge_ids[m.alpha[h]] for h in hs):
        raise MapError("edge ids must be shared exactly by alpha-pairs", "edge_ids")
    if len(set(m.edge_ids.values())) * 2 != len(hs):
        raise MapError("two edges share an id", "edge_ids")
    seen = {m.root}
    todo = [m.root]
    while todo:
        h = todo.pop()
        for k in (m.sigma[h], m.alpha[h], m.sigma_inv(h)):
            if k not in seen:
                seen.add(k)
                todo.append(k)
    if seen != hs:
        raise MapError("sigma and alpha do not act transitively", "not_transitive")


def validate(m: CombMap) -> Multigraph:
    """Re-check the map invariants and return its underlying graph."""
    _validate(m)
    return underlying_graph(m)


def underlying_graph(m: CombMap) -> Multigraph:
    g = m._cache.get("graph")
    if g is None:
        edges = []
        for e in sorted(set(m.edge_ids.values())):
            h, k = m.halves(e)
            edges.append((e, m.vertex_of(h), m.vertex_of(k)))
        labels = {}
        for e in sorted(set(m.edge_ids.values())):
            h, k = m.halves(e)
            if h in m.names:
                labels[e] = m.names[h]
        g = m._cache["graph"] = Multigraph(len(m.vertices()), edges, labels)
    return g


def faces_genus(m: CombMap):
    v, e, f = len(m.vertices()), m.edge_count, len(m.faces())
    twice = 2 - v + e - f
    if twice < 0 or twice % 2:
        raise MapError("Euler characteristic is inconsistent", "euler")
    return m.faces(), twice // 2


def is_planar(m: CombMap) -> bool:
    return faces_genus(m)[1] == 0


# ---------------------------------------------------------------------------
# tours


class MotionOrder:
    def __init__(self, half_edge_order, edge_order):
        self.half_edge_order = tuple(half_edge_order)
        self.half_edge_rank = {h: i for i, h in enumerate(half_edge_order)}
        self.edge_order = tuple(edge_order)
        self.edge_rank = {e: i for i, e in enumerate(edge_order)}


def _edge_order_from(m: CombMap, order):
    rank = {h: i for i, h in enumerate(order)}
    edges = sorted(set(m.edge_ids.values()),
                   key=lambda e: min(rank[h] for h in m.halves(e)))
    return edges


def motion_order(m: CombMap, t: int) -> MotionOrder:
    """Order of half-edges met by the tour of the spanning tree ``t``
    (edge-id bitmask): cross external edges, follow internal ones."""
    from .graph import is_spanning_tree

    g = underlying_graph(m)
    if not is_spanning_tree(g, t):
        raise MapError("motion order needs a spanning tree", "not_spanning_tree")
    order = [m.root]
    h = m.root
    while True:
        h = m.phi(h) if t >> m.edge(h) & 1 else m.sigma[h]
        if h == m.root:
            break
        order.append(h)
        if len(order) > len(m.sigma):
            break
    if len(order) != len(m.sigma):
        raise MapError("motion function is not cyclic", "not_cyclic")
    return MotionOrder(order, _edge_order_from(m, order))


def mirror(m: CombMap) -> CombMap:
    inv = {v: k for k, v in m.sigma.items()}
    return CombMap(inv, dict(m.alpha), inv[m.root], dict(m.edge_ids), dict(m.names), check=False)


def dual_map(m: CombMap) -> CombMap:
    """Faces become vertices: rotation sigma o alpha, same root and edge ids."""
    if not is_planar(m):
        raise MapError("dual map needs genus 0", "not_planar")
    return CombMap({h: m.phi(h) for h in m.sigma}, dict(m.alpha), m.root,
                   dict(m.edge_ids), dict(m.names), check=False)


def is_isthmus(m: CombMap, e: int) -> bool:
    return underlying_graph(m).is_isthmus(e)


def is_loop(m: CombMap, e: int) -> bool:
    return underlying_graph(m).is_loop(e)


def _remove(m, e, new_sigma_of):
    h1, h2 = m.halves(e)
    sigma = {}
    for h in m.sigma:
        if h in (h1, h2):
            continue
        sigma[h] = new_sigma_of(h)
    alpha = {h: k for h, k in m.alpha.items() if h not in (h1, h2)}
    ids = {h: k for h, k in m.edge_ids.items() if h not in (h1, h2)}
    names = {h: k for h, k in m.names.items() if h not in (h1, h2)}
    root = m.root
    if root in (h1, h2):
        root = new_sigma_of(h1) if sigma else None
    if not sigma:
        return None
    return CombMap(sigma, alpha, root, ids, names)


def map_delete(m: CombMap, e: int) -> Optional[CombMap]:
    """Delete a non-isthmus edge.  Returns None when nothing is left."""
    if is_isthmus(m, e):
        raise MapError("cannot delete an isthmus of a map", "isthmus_delete")
    h1, h2 = m.halves(e)
    s = m.sigma

    def sd(h):
        if (s[h] == h1 and s[h1] == h2) or (s[h] == h2 and s[h2] == h1):
            return s[s[s[h]]]
        if (s[h] == h1 and s[h1] != h2) or (s[h] == h2 and s[h2] != h1):
            return s[s[h]]
        return s[h]

    return _remove(m, e, sd)


def map_contract(m: CombMap, e: int) -> Optional[CombMap]:
    """Contract a non-loop edge.  Returns None when nothing is left."""
    if is_loop(m, e):
        raise MapError("cannot contract a loop of a map", "loop_contract")
    h1, h2 = m.halves(e)
    s, a = m.sigma, m.alpha

    def sc(h):
        if (s[h] == h1 and s[h2] == h2) or (s[h] == h2 and s[h1] == h1):
            return s[s[h]]
        if (s[h] == h1 and s[h2] != h2) or (s[h] == h2 and s[h1] != h1):
            return s[a[s[h]]]
        return s[h]

    if len(m.sigma) == 2:
        return None
    return _remove(m, e, sc)


# ---------------------------------------------------------------------------
# canonical forms and enumeration


def canonical_form(m: CombMap):
    """Relabel half-edges in breadth-first order from the root (alpha first,
    then sigma).  Two rooted maps are isomorphic iff the forms are equal."""
    label = {m.root: 0}
    order = [m.root]
    i = 0
    while i < len(order):
        h = order[i]
        for k in (m.alpha[h], m.sigma[h]):
            if k not in label:
                label[k] = len(order)
                order.append(k)
        i += 1
    n = len(order)
    return (tuple(label[m.sigma[order[j]]] for j in range(n)),
            tuple(label[m.alpha[order[j]]] for j in range(n)))


def relabel_canonical(m: CombMap) -> CombMap:
    sig, alp = canonical_form(m)
    return CombMap(list(sig), list(alp), 0)


ENUMERATION_LIMIT = 5


def enumerate_rooted_maps(edge_count: int, genus: Optional[int] = 0,
                          degree_filter=None, max_edges: int = ENUMERATION_LIMIT) -> list:
    """All rooted maps with ``edge_count`` edges, one per isomorphism class.

    Maps are produced directly in canonical (breadth-first) labelling, so no
    deduplication is needed.  ``genus=None`` keeps all genera.
    ``degree_filter`` is a set of allowed vertex degrees or a predicate.
    """
    if edge_count > max_edges:
        raise MapError(f"enumeration limited to {max_edges} edges", "size_limit")
    return list(_enumerate(edge_count, genus, _filter_key(degree_filter)))


def _filter_key(flt):
    if flt is None:
        return None
    if callable(flt):
        return flt
    return frozenset(flt)


@lru_cache(maxsize=64)
def _enumerate_cached(n_edges, genus, flt):
    return tuple(_generate(n_edges, genus, flt))


def _enumerate(n_edges, genus, flt):
    if flt is None or isinstance(flt, frozenset):
        return _enumerate_cached(n_edges, genus, flt)
    return tuple(_generate(n_edges, genus, flt))


def _generate(n_edges, genus, flt):
    if n_edges == 0:
        return
    size = 2 * n_edges
    allowed = (lambda d: d in flt) if isinstance(flt, frozenset) else flt
    max_deg = max(flt) if isinstance(flt, frozenset) else size
    sigma = [None] * size
    sinv = [None] * size
    alpha = [None] * size

    def chain_len(i):
        # length of the sigma-chain through i; negative when it is closed
        n = 1
        k = sigma[i]
        while k is not None and k != i:
            n += 1
            k = sigma[k]
        if k == i:
            return -n
        k = sinv[i]
        while k is not None:
            n += 1
            k = sinv[k]
        return n

    def rec(i, count):
        if i == count:
            if count != size:
                return
            m = CombMap(list(sigma), list(alpha), 0, check=False)
            if genus is not None and faces_genus(m)[1] != genus:
                return
            yield CombMap(list(sigma), list(alpha), 0)
            return
        # alpha of i
        if alpha[i] is None:
            choices = [j for j in range(i + 1, count) if alpha[j] is None]
            if count < size:
                choices.append(count)
            for j in choices:
                alpha[i], alpha[j] = j, i
                yield from rec_sigma(i, max(count, j + 1))
                alpha[i] = alpha[j] = None
        else:
            yield from rec_sigma(i, count)

    def rec_sigma(i, count):
        choices = [j for j in range(count) if sinv[j] is None]
        if count < size:
            choices.append(count)
        for j in choices:
            sigma[i], sinv[j] = j, i
            cl = chain_len(i)
            ok = (allowed is None or allowed(-cl)) if cl < 0 else cl <= max_deg
            if ok:
                yield from rec(i + 1, max(count, j + 1))
            sigma[i] = sinv[j] = None

    yield from rec(0, 1)


def planar_catalogue(max_edges: int = 5) -> list:
    """All rooted planar maps with 1..max_edges edges."""
    out = []
    for n in range(1, max_edges + 1):
        out.extend(enumerate_rooted_maps(n))
    return out


# ---------------------------------------------------------------------------
# text format


def parse_map(text: str) -> CombMap:
    nh, cycles, pairs, root = None, [], [], None
    names = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line, _, comment = raw.partition("#")
        parts = line.split()
        words = comment.split()
        if words[:1] == ["name"]:
            for item in words[1:]:
                h, _, lab = item.partition("=")
                names[int(h)] = lab
        if not parts:
            continue
        try:
            if parts[0] == "nh":
                nh = int(parts[1])
            elif parts[0] == "sigma":
                cycles.append([int(x) for x in parts[1:]])
            elif parts[0] == "alpha":
                pairs.append((int(parts[1]), int(parts[2])))
            elif parts[0] == "root":
                root = int(parts[1])
            else:
                raise MapError(f"line {lineno}: unknown record {parts[0]!r}", "parse")
        except (IndexError, ValueError):
            raise MapError(f"line {lineno}: cannot parse {raw!r}", "parse") from None
    if nh is None or root is None:
        raise MapError("map file needs 'nh' and 'root' lines", "parse")
    covered = sorted(h for c in cycles for h in c)
    if covered != list(range(nh)):
        raise MapError("sigma cycles must cover 0..nh-1 exactly once", "sigma_not_permutation")
    return CombMap.from_cycles(cycles, pairs, root, names=names)


def format_map(m: CombMap) -> str:
    hs = sorted(m.sigma)
    if hs != list(range(len(hs))):
        m = relabel_canonical(m)
    lines = [f"nh {len(m.sigma)}"]
    for cyc in m.vertices():
        lines.append("sigma " + " ".join(map(str, cyc)))
    for h in sorted(m.alpha):
        if h < m.alpha[h]:
            lines.append(f"alpha {h} {m.alpha[h]}")
    lines.append(f"root {m.root}")
    if m.names:
        lines.append("# name " + " ".join(f"{h}={m.names[h]}" for h in sorted(m.names)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fixtures

M0_NAMES = ["a", "a'", "b", "b'", "c", "c'", "d", "d'"]


def m0() -> CombMap:
    """Eight half-edges a, a', b, b', c, c', d, d' (ids 0..7), rooted at a.
    Edge ids: aa'=0, bb'=1, cc'=2, dd'=3."""
    n = {x: i for i, x in enumerate(M0_NAMES)}
    cycles = [[n["a"], n["b"], n["d"]], [n["a'"], n["d'"], n["c'"]], [n["b'"], n["c"]]]
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7)]
    names = dict(enumerate(M0_NAMES))
    return CombMap.from_cycles(cycles, pairs, 0, names=names)


def m0_edge_names():
    return {0: "aa'", 1: "bb'", 2: "cc'", 3: "dd'"}


def vertex_map() -> CombMap:
    """The map with one vertex and no edge."""
    return CombMap({}, {}, None)


def torus_two_loops() -> CombMap:
    """One vertex with two interleaved loops: genus 1."""
    return CombMap.from_cycles([[0, 2, 1, 3]], [(0, 1), (2, 3)], 0)
