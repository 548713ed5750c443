"""Decision trees: perfect binary trees labelled by edges.

A node is addressed by its direction sequence from the root, a tuple of
0 (left) and 1 (right).  Along every root-to-leaf path the labels must be
a permutation of the edge set.
"""

from __future__ import annotations

import itertools
import random
import re
from functools import lru_cache

from .graph import GraphError, Multigraph

LEFT, RIGHT = 0, 1
EXPLICIT_LIMIT = 16


class DecisionTreeError(GraphError):
    def __init__(self, message, code="malformed_decision_tree"):
        super().__init__(message, code)


class DecisionTree:
    """Base class; subclasses implement :meth:`label`."""

    def __init__(self, edges):
        self.edges = tuple(sorted(edges))

    @property
    def depth(self) -> int:
        return len(self.edges)

    def label(self, path: tuple) -> int:
        raise NotImplementedError

    def path_labels(self, path: tuple) -> list:
        """Labels met when descending along ``path`` (one more than len(path))."""
        return [self.label(path[:k]) for k in range(len(path) + 1)]

    def check_path(self, path: tuple):
        seen = self.path_labels(path)
        if len(set(seen)) != len(seen) or not set(seen) <= set(self.edges):
            raise DecisionTreeError(f"labels repeat or leave the edge set along {path}")

    def validate(self):
        """Check every root-to-leaf path (exponential; meant for small trees)."""
        m = self.depth
        for path in itertools.product((LEFT, RIGHT), repeat=max(m - 1, 0)):
            labels = self.path_labels(path) if m else []
            if sorted(labels) != list(self.edges):
                raise DecisionTreeError(f"path {path} is not a permutation of the edges")
        return True

    def explicit(self) -> "ExplicitDecisionTree":
        m = self.depth
        if m > EXPLICIT_LIMIT:
            raise DecisionTreeError("too many edges for an explicit tree", "size_limit")
        table = [None] * (1 << m)
        for k in range(m):
            for path in itertools.product((LEFT, RIGHT), repeat=k):
                table[_index(path)] = self.label(path)
        return ExplicitDecisionTree(self.edges, table)

    def mirrored(self) -> "DecisionTree":
        """The tree obtained by exchanging left and right everywhere."""
        return FunctionDecisionTree(self.edges,
                                    lambda p: self.label(tuple(1 - d for d in p)))

    def to_sexp(self, g: Multigraph | None = None) -> str:
        name = (lambda e: g.label(e)) if g is not None else str

        def rec(path):
            lab = name(self.label(path))
            if len(path) == self.depth - 1:
                return f"({lab})"
            return f"({lab} {rec(path + (LEFT,))} {rec(path + (RIGHT,))})"

        return rec(()) if self.depth else "()"


def _index(path) -> int:
    i = 1
    for d in path:
        i = 2 * i + d
    return i


class ExplicitDecisionTree(DecisionTree):
    """Array-backed tree: node ``path`` sits at heap index ``_index(path)``."""

    def __init__(self, edges, table):
        super().__init__(edges)
        self.table = list(table)
        if len(self.table) != (1 << self.depth):
            raise DecisionTreeError("table size does not match depth")

    @classmethod
    def from_mapping(cls, edges, mapping: dict) -> "ExplicitDecisionTree":
        edges = tuple(sorted(edges))
        table = [None] * (1 << len(edges))
        for path, e in mapping.items():
            table[_index(tuple(path))] = e
        if any(x is None for x in table[1:]):
            raise DecisionTreeError("some nodes have no label")
        t = cls(edges, table)
        t.validate()
        return t

    def label(self, path):
        if len(path) >= self.depth:
            raise DecisionTreeError(f"path {path} goes below the leaves")
        return self.table[_index(path)]


class FunctionDecisionTree(DecisionTree):
    """Labels given by a function of the direction prefix (memoised)."""

    def __init__(self, edges, fn):
        super().__init__(edges)
        self._fn = lru_cache(maxsize=None)(fn)

    def label(self, path):
        if len(path) >= self.depth:
            raise DecisionTreeError(f"path {path} goes below the leaves")
        return self._fn(tuple(path))


class RandomDecisionTree(DecisionTree):
    """Lazy random tree: each prefix picks a uniformly random unused edge.

    The choice at a prefix depends only on the seed and the prefix, so
    repeated or concurrent queries always agree.
    """

    def __init__(self, edges, seed: int = 0):
        super().__init__(edges)
        self.seed = seed
        self._memo = {}

    def label(self, path):
        path = tuple(path)
        hit = self._memo.get(path)
        if hit is not None:
            return hit
        if len(path) >= self.depth:
            raise DecisionTreeError(f"path {path} goes below the leaves")
        used = set(self.label(path[:k]) for k in range(len(path)))
        free = [e for e in self.edges if e not in used]
        rng = random.Random(f"{self.seed}:{''.join(map(str, path))}")
        e = free[rng.randrange(len(free))]
        self._memo[path] = e
        return e


def random_decision_tree(g: Multigraph, seed: int = 0) -> RandomDecisionTree:
    return RandomDecisionTree(g.edges, seed)


def constant_depth_tree(edges, sequence) -> FunctionDecisionTree:
    """Tree whose depth-k nodes all carry ``sequence[k]``."""
    seq = list(sequence)
    return FunctionDecisionTree(edges, lambda p: seq[len(p)])


def all_decision_trees(edges):
    """Every explicit decision tree on ``edges`` (only sensible for m <= 4)."""
    edges = tuple(sorted(edges))
    m = len(edges)
    nodes = [p for k in range(m) for p in itertools.product((LEFT, RIGHT), repeat=k)]

    def rec(i, mapping):
        if i == len(nodes):
            yield ExplicitDecisionTree.from_mapping(edges, mapping)
            return
        path = nodes[i]
        used = {mapping[path[:k]] for k in range(len(path))}
        for e in edges:
            if e not in used:
                mapping[path] = e
                yield from rec(i + 1, mapping)
        mapping.pop(path, None)

    if m == 0:
        return
    yield from rec(0, {})


# ---------------------------------------------------------------------------
# s-expression format: (label left right), leaves (label)

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_sexp(text: str, g: Multigraph) -> ExplicitDecisionTree:
    tokens = [t for t in _TOKEN.findall(text) if t.strip()]
    pos = 0

    def edge_of(tok):
        if tok in g.labels.values():
            return g.edge_by_label(tok)
        try:
            e = int(tok)
        except ValueError:
            raise DecisionTreeError(f"unknown edge {tok!r}", "parse") from None
        g.endpoints(e)
        return e

    def node(path, mapping):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise DecisionTreeError("expected '('", "parse")
        pos += 1
        mapping[path] = edge_of(tokens[pos])
        pos += 1
        if tokens[pos] == "(":
            node(path + (LEFT,), mapping)
            node(path + (RIGHT,), mapping)
        if tokens[pos] != ")":
            raise DecisionTreeError("expected ')'", "parse")
        pos += 1

    mapping = {}
    try:
        node((), mapping)
    except IndexError:
        raise DecisionTreeError("unexpected end of input", "parse") from None
    if pos != len(tokens):
        raise DecisionTreeError("trailing input", "parse")
    return ExplicitDecisionTree.from_mapping(g.edges, mapping)


# ---------------------------------------------------------------------------
# the decision tree of the worked example on G0


def delta0(g: Multigraph) -> ExplicitDecisionTree:
    """Decision tree for :func:`tuttedelta.graph.g0` (edges a, b, c, d)."""
    a, b, c, d = (g.edge_by_label(x) for x in "abcd")
    L, R = LEFT, RIGHT
    mapping = {(): c, (L,): b, (R,): d,
               (L, L): a, (L, R): a, (R, L): b, (R, R): a}
    for p, e in {(L, L): d, (L, R): d, (R, L): a, (R, R): b}.items():
        mapping[p + (L,)] = e
        mapping[p + (R,)] = e
    return ExplicitDecisionTree.from_mapping(g.edges, mapping)
