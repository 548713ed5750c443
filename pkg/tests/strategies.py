"""Hypothesis strategies for small multigraphs."""

from hypothesis import strategies as st

from tuttedelta.graph import Multigraph


@st.composite
def multigraphs(draw, max_vertices=4, max_edges=6, loops=True):
    """Connected multigraphs: a random tree plus random extra edges."""
    n = draw(st.integers(1, max_vertices))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    vertex = st.integers(0, n - 1)
    pair = st.tuples(vertex, vertex)
    if not loops:
        pair = pair.filter(lambda p: p[0] != p[1]) if n > 1 else st.nothing()
    extra = draw(st.lists(pair, max_size=max(0, max_edges - len(edges)))) if n > 1 or loops else []
    edges += extra
    order = draw(st.permutations(range(len(edges))))
    return Multigraph(n, [(i, *edges[k]) for i, k in enumerate(order)])


@st.composite
def simple_graphs(draw, max_vertices=5, max_edges=7):
    """Connected graphs without loops or parallel edges."""
    n = draw(st.integers(1, max_vertices))
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    others = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    room = max(0, max_edges - len(edges))
    if others and room:
        edges += draw(st.lists(st.sampled_from(others), unique=True, max_size=room))
    return Multigraph(n, [(i, u, v) for i, (u, v) in enumerate(edges)])


def seeds():
    return st.integers(0, 2 ** 31)
