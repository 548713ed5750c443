"""Small graphs and maps shared by the tests and the acceptance run."""

from tuttedelta.combmap import CombMap
from tuttedelta.graph import Multigraph

# six vertices 1..6 (stored 0..5), ten labelled edges
_ORDER_EDGES = [("a", 1, 5), ("b", 5, 6), ("c", 2, 5), ("d", 1, 2), ("e", 2, 3),
                ("f", 3, 5), ("g", 1, 3), ("h", 1, 6), ("i", 3, 4), ("j", 1, 4)]


def cycle_example():
    """Six vertices, ten edges; the tree {a,b,d,e,i} gives j the
    fundamental cycle {d,e,i,j}."""
    g = Multigraph(6, [(k, u - 1, v - 1) for k, (_, u, v) in enumerate(_ORDER_EDGES)],
                   {k: lab for k, (lab, _, _) in enumerate(_ORDER_EDGES)})
    return g, g.mask("abdei")


def dfs_example():
    """Simple graph where the DFS decision tree makes d the only external
    active edge of the tree {a, c, e}."""
    g = Multigraph(4, [(0, 0, 1), (1, 0, 2), (2, 1, 3), (3, 1, 2), (4, 2, 3)],
                   dict(enumerate("abcde")))
    return g, g.mask("ace")


def torus_theta():
    """Two vertices joined by three edges, embedded on the torus.  With the
    tree {0}, edge 0 is inactive although its hanging subtree has charge 0."""
    return CombMap.from_cycles([[0, 2, 4], [1, 3, 5]], [(0, 1), (2, 3), (4, 5)], 0)


# typing table of G0 under Delta0: one row per class of subgraphs,
# types listed for a, b, c, d
G0_TYPING_ROWS = [
    (["", "b", "d", "bd"], ("Se", "I", "Se", "I")),
    (["a", "ab", "ad", "abd"], ("Si", "I", "Se", "L")),
    (["c", "ac"], ("I", "Se", "Si", "Se")),
    (["bc", "abc"], ("L", "Si", "Si", "Se")),
    (["cd", "acd", "bcd", "abcd"], ("L", "L", "Si", "Si")),
]
