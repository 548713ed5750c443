import itertools

import pytest
from hypothesis import given, strategies as st

from fixtures import cycle_example
from strategies import multigraphs
from tuttedelta.graph import (GraphError, Multigraph, bits, canonical_key, components,
                              connected_multigraphs, cyclomatic, enumerate_spanning_forests,
                              enumerate_spanning_trees, format_graph, fundamental_cocycle,
                              fundamental_cycle, g0, g1, is_forest, is_spanning_tree, mask_of,
                              parse_graph, popcount, subsets)


def test_g0_basic_counts():
    g = g0()
    assert (g.vertex_count, g.edge_count) == (3, 4)
    assert g.is_connected() and not g.is_simple()
    assert len(enumerate_spanning_trees(g)) == 5
    assert components(g, g.mask("ac")) == 1


def test_fundamental_cycle_and_cocycle_on_g0():
    g = g0()
    t = g.mask("ac")
    assert g.names(fundamental_cycle(g, t, g.edge_by_label("b"))) == ["a", "b", "c"]
    assert g.edge_by_label("b") in bits(fundamental_cocycle(g, t, g.edge_by_label("c")))


def test_fundamental_cycle_on_six_vertex_example():
    g, t = cycle_example()
    assert is_spanning_tree(g, t)
    assert g.names(fundamental_cycle(g, t, g.edge_by_label("j"))) == ["d", "e", "i", "j"]


def test_deleting_c_makes_b_an_isthmus():
    g = g0().delete(2)
    assert g.is_isthmus(g.edge_by_label("b"))
    # minors keep the original ids
    assert sorted(g.edges) == [0, 1, 3]


def test_contract_merges_endpoints():
    g = g0()
    h = g.contract(g.edge_by_label("c"))
    assert h.vertex_count == 2
    assert h.is_loop(g.edge_by_label("b")) is False
    assert sum(1 for e in h.edges if h.is_loop(e)) == 0


def test_g1_has_a_loop():
    g = g1()
    assert g.is_loop(g.edge_by_label("55"))
    assert g.vertex_count == 6


def test_parse_rejects_bad_input():
    with pytest.raises(GraphError) as err:
        parse_graph("v 2\ne 0 0 1\ne 0 1 1\n")
    assert err.value.code == "duplicate_edge"
    with pytest.raises(GraphError) as err:
        parse_graph("v 2\ne 0 0 5\n")
    assert err.value.code == "bad_vertex"
    with pytest.raises(GraphError):
        parse_graph("e 0 0 1\n")
    with pytest.raises(GraphError):
        parse_graph("v 2\nq 1\n")


def test_parse_comments_and_labels():
    g = parse_graph("# triangle\nv 3\ne 0 0 1 a\ne 1 1 2 b  # comment\ne 2 0 2\n")
    assert g.label(0) == "a" and g.label(1) == "b"
    assert g.edge_count == 3


def test_catalogue_size_and_distinctness():
    cat = connected_multigraphs(5)
    assert len(cat) == 143
    assert len({canonical_key(g) for g in cat}) == len(cat)
    # per edge count; matches the brute-force count over all edge multisets
    assert [sum(1 for g in cat if g.edge_count == m) for m in range(6)] == [1, 2, 4, 11, 30, 95]


def _brute_force_classes(m):
    seen = set()
    for n in range(1, m + 2):
        pairs = [(u, v) for u in range(n) for v in range(u, n)]
        perms = list(itertools.permutations(range(n)))
        for es in itertools.combinations_with_replacement(pairs, m):
            g = Multigraph(n, [(i, u, v) for i, (u, v) in enumerate(es)])
            if g.is_connected():
                seen.add((n, min(tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in es))
                                 for p in perms)))
    return len(seen)


@pytest.mark.parametrize("m", range(5))
def test_catalogue_matches_brute_force(m):
    assert sum(1 for g in connected_multigraphs(m) if g.edge_count == m) == _brute_force_classes(m)


@given(multigraphs())
def test_format_parse_roundtrip(g):
    h = parse_graph(format_graph(g))
    assert h.edges == g.edges


@given(multigraphs())
def test_forest_enumeration_matches_brute_force(g):
    forests = set(enumerate_spanning_forests(g))
    assert forests == {s for s in subsets(g.full_mask) if is_forest(g, s)}
    trees = set(enumerate_spanning_trees(g))
    assert trees == {f for f in forests if components(g, f) == 1}


@given(multigraphs(max_edges=6))
def test_fundamental_cycle_cocycle_duality(g):
    # e is in the fundamental cycle of f iff f is in the fundamental cocycle of e
    for t in enumerate_spanning_trees(g)[:3]:
        for e in g.edges:
            if t >> e & 1:
                continue
            cyc = fundamental_cycle(g, t, e)
            for f in bits(t):
                assert bool(cyc >> f & 1) == bool(fundamental_cocycle(g, t, f) >> e & 1)


@given(multigraphs(), st.randoms(use_true_random=False))
def test_canonical_key_is_relabelling_invariant(g, rnd):
    verts = list(g.vertices)
    perm = verts[:]
    rnd.shuffle(perm)
    relabel = dict(zip(verts, perm))
    ids = list(g.edges)
    rnd.shuffle(ids)
    h = Multigraph(g.vertex_count, [(ids[k], relabel[u], relabel[v])
                                    for k, (u, v) in enumerate(g.edges.values())])
    assert canonical_key(g) == canonical_key(h)


@given(multigraphs())
def test_euler_relation_for_every_subset(g):
    for s in subsets(g.full_mask):
        assert cyclomatic(g, s) == popcount(s) - g.vertex_count + components(g, s)
        assert cyclomatic(g, s) >= 0


@given(multigraphs(max_edges=5))
def test_delete_contract_edge_counts(g):
    for e in g.edges:
        if not g.is_isthmus(e):
            d = g.delete(e)
            assert d.edge_count == g.edge_count - 1 and d.is_connected()
        if not g.is_loop(e):
            c = g.contract(e)
            assert c.vertex_count == g.vertex_count - 1 and c.is_connected()


def test_mask_helpers():
    assert mask_of([0, 3]) == 0b1001
    assert list(bits(0b1010)) == [1, 3]
    assert sorted(subsets(0b101)) == [0, 1, 4, 5]
