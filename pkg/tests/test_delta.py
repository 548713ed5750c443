from hypothesis import given, settings

from strategies import multigraphs, seeds
from tuttedelta.combmap import planar_catalogue, underlying_graph
from tuttedelta.decision import delta0, random_decision_tree
from tuttedelta.delta import (I, L, SE, SI, assign_types, canonical_tree, check_tree_compatible,
                              build_decision_tree, delta_active, duality_check, eval_descriptions,
                              forest_active, forest_interval_check, forest_tutte,
                              internal_active_alg3, interval_partition, maximality_check,
                              tree_ordering, tutte_via_delta, variant_independence_check,
                              witness_check)
from tuttedelta.graph import enumerate_spanning_trees, g0, subsets
from tuttedelta.tutte import tutte_subgraph_sum


def _names(g, order):
    return "".join(g.label(e) for e in order)


def test_history_of_ad():
    g = g0()
    ty = assign_types(g, delta0(g), g.mask("ad"))
    assert [(g.label(e), t) for e, t in ty.history] == [("c", SE), ("b", I), ("a", SI), ("d", L)]


def test_typing_examples():
    g = g0()
    d = delta0(g)
    ty = assign_types(g, d, 0)
    assert [ty.types[g.edge_by_label(x)] for x in "abcd"] == [SE, I, SE, I]
    ty = assign_types(g, d, g.mask("cd"))
    assert [ty.types[g.edge_by_label(x)] for x in "abcd"] == [L, L, SI, SI]


def test_actives_of_trees():
    g = g0()
    d = delta0(g)
    assert g.names(delta_active(g, d, g.mask("bd"))) == ["b", "d"]
    t = g.mask("ab")
    act = delta_active(g, d, t)
    assert g.names(act & t) == ["b"] and g.names(act & ~t) == ["d"]
    t = g.mask("cd")
    act = delta_active(g, d, t)
    assert act & t == 0 and g.names(act) == ["a", "b"]
    for names, internal in (("bd", "bd"), ("ab", "b"), ("cd", "")):
        assert g.names(internal_active_alg3(g, d, g.mask(names))) == list(internal)


def test_orderings():
    g = g0()
    d = delta0(g)
    assert _names(g, tree_ordering(g, d, g.mask("ac"))) == "cdba"
    assert _names(g, tree_ordering(g, d, g.mask("bd"))) == "cbad"
    assert _names(g, assign_types(g, d, g.mask("ad")).order) == "cbad"


def test_canonical_trees():
    g = g0()
    d = delta0(g)
    assert g.names(canonical_tree(g, d, g.mask("ad"))) == ["a", "b"]
    assert g.names(canonical_tree(g, d, 0)) == ["b", "d"]


def test_partition_and_forest_activity_on_g0():
    g = g0()
    d = delta0(g)
    assert sorted(iv.size for iv in interval_partition(g, d)) == [2, 2, 4, 4, 4]
    assert forest_active(g, d, g.mask("bd")) == 0
    assert forest_tutte(g, d) == tutte_subgraph_sum(g)


def test_order_map_of_delta0_is_tree_compatible():
    g = g0()
    d = delta0(g)
    order_map = {t: tree_ordering(g, d, t) for t in enumerate_spanning_trees(g)}
    assert check_tree_compatible(g, order_map) == (True, None)
    rebuilt = build_decision_tree(g, order_map)
    for t in order_map:
        assert assign_types(g, rebuilt, t).active == assign_types(g, d, t).active


def test_incompatible_order_map_is_rejected():
    g = g0()
    trees = enumerate_spanning_trees(g)
    order_map = {t: tuple(sorted(g.edges)) for t in trees}
    order_map[trees[0]] = tuple(reversed(sorted(g.edges)))
    ok, witness = check_tree_compatible(g, order_map)
    assert not ok and witness is not None


@given(multigraphs(max_edges=6), seeds())
def test_delta_activity_describes_tutte(g, seed):
    d = random_decision_tree(g, seed)
    assert tutte_via_delta(g, d) == tutte_subgraph_sum(g)


@given(multigraphs(max_edges=6), seeds())
def test_intervals_partition_subgraphs(g, seed):
    d = random_decision_tree(g, seed)
    parts = interval_partition(g, d, check=True)
    assert sum(iv.size for iv in parts) == 2 ** g.edge_count


@settings(max_examples=25)
@given(multigraphs(max_edges=5), seeds())
def test_structural_properties(g, seed):
    d = random_decision_tree(g, seed)
    assert variant_independence_check(g, d)
    assert maximality_check(g, d)
    assert witness_check(g, d)
    assert forest_interval_check(g, d)
    oracle = tutte_subgraph_sum(g)
    assert all(p == oracle for p in eval_descriptions(g, d).values())
    assert forest_tutte(g, d) == oracle


@given(multigraphs(max_edges=6), seeds())
def test_algorithm_without_contraction_agrees(g, seed):
    d = random_decision_tree(g, seed)
    for t in enumerate_spanning_trees(g):
        assert internal_active_alg3(g, d, t) == delta_active(g, d, t) & t


@given(multigraphs(max_edges=5), seeds())
def test_same_interval_means_same_history(g, seed):
    d = random_decision_tree(g, seed)
    by_tree = {}
    for s in subsets(g.full_mask):
        ty = assign_types(g, d, s)
        by_tree.setdefault(canonical_tree(g, d, s), set()).add(ty.path)
    assert all(len(paths) == 1 for paths in by_tree.values())


def test_duality_complement_convention():
    count = 0
    for m in planar_catalogue(3):
        g = underlying_graph(m)
        for seed in range(3):
            d = random_decision_tree(g, seed)
            for s in subsets(g.full_mask):
                assert duality_check(m, d, s)["ok"]
                count += 1
    assert count > 100
