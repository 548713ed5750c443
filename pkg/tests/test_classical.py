from hypothesis import given, settings, strategies as st

from fixtures import dfs_example, torus_theta
from strategies import simple_graphs
from tuttedelta.classical import (blossom_walk, blossoming_internal_active, charge_criterion,
                                  delta_ord, dfs_active, dfs_active_inversions, dfs_as_delta,
                                  dfs_forest, embedding_activity, embedding_as_delta,
                                  mirror_max_activity, ordering_activity)
from tuttedelta.combmap import m0, planar_catalogue, underlying_graph
from tuttedelta.delta import assign_types, tutte_via_delta
from tuttedelta.graph import (enumerate_spanning_forests, enumerate_spanning_trees, g0, g1,
                              is_spanning_tree, mask_of, subsets)
from tuttedelta.tutte import tutte_subgraph_sum

MAPS = [m for m in planar_catalogue(4) if m.edge_count]


def test_ordering_example():
    g = g0()
    t = g.mask("ac")
    act = ordering_activity(g, [0, 1, 2, 3], t)
    assert g.names(act) == ["a"]


def test_ordering_matches_its_decision_tree():
    g = g0()
    order = [2, 0, 3, 1]
    d = delta_ord(g, order)
    for t in enumerate_spanning_trees(g):
        assert assign_types(g, d, t).active == ordering_activity(g, order, t)


def test_embedding_example_on_m0():
    m = m0()
    t = mask_of([1, 3])
    act = embedding_activity(m, t)
    assert act & ~t == 1 << 0 and act & t == 1 << 1
    assert assign_types(underlying_graph(m), embedding_as_delta(m), t).active == act


def test_dfs_examples():
    g = g1()
    f1 = g.mask(["14", "46", "24", "35"])
    forest, order = dfs_forest(g, f1, with_order=True)
    assert forest == f1
    assert [v + 1 for v in order] == [1, 4, 6, 2, 3, 5]
    assert sorted(g.names(dfs_active(g, f1))) == ["12", "55"]
    gd, t = dfs_example()
    assert gd.names(dfs_active(gd, t)) == ["d"]


def test_g1_dfs_intervals():
    g = g1()
    for s in subsets(g.full_mask):
        f = dfs_forest(g, s)
        assert s & f == f and (s & ~f) & ~dfs_active(g, f) == 0


@given(simple_graphs(max_vertices=5, max_edges=7))
def test_dfs_activity_two_ways(g):
    for f in enumerate_spanning_forests(g):
        assert dfs_active(g, f) == dfs_active_inversions(g, f)


@settings(max_examples=20)
@given(simple_graphs(max_vertices=4, max_edges=6))
def test_dfs_decision_tree(g):
    d = dfs_as_delta(g)
    assert tutte_via_delta(g, d) == tutte_subgraph_sum(g)
    for t in enumerate_spanning_trees(g):
        assert assign_types(g, d, t).external_active == dfs_active(g, t)


@given(st.sampled_from(MAPS))
def test_embedding_and_mirror(m):
    g = underlying_graph(m)
    for t in enumerate_spanning_trees(g):
        assert embedding_activity(m, t) == mirror_max_activity(m, t)


@given(st.sampled_from(MAPS))
def test_blossoming_three_ways(m):
    g = underlying_graph(m)
    for t in enumerate_spanning_trees(g):
        ref = blossoming_internal_active(m, t, "isthmus")
        assert blossoming_internal_active(m, t, "definition") == ref
        assert blossoming_internal_active(m, t, "delta") == ref


@given(st.sampled_from(MAPS))
def test_blossom_walk_ends_on_a_tree(m):
    g = underlying_graph(m)
    for f in enumerate_spanning_forests(g):
        w = blossom_walk(m, f)
        assert is_spanning_tree(g, w.tree)
        assert w.tree & f == f
        assert w.steps <= 2 * len(m.sigma) * (g.edge_count + 1)


def test_torus_counterexample_fixture():
    r = charge_criterion(torus_theta(), 1 << 0, 0)
    assert r == {"active": False, "subtree_charge": 0}
