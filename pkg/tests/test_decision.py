import pytest
from hypothesis import given

from strategies import multigraphs, seeds
from tuttedelta.decision import (DecisionTreeError, all_decision_trees, constant_depth_tree,
                                 delta0, parse_sexp, random_decision_tree)
from tuttedelta.graph import g0, k3


def test_delta0_labels():
    g = g0()
    d = delta0(g)
    assert g.label(d.label(())) == "c"
    assert g.label(d.label((0,))) == "b"
    assert g.label(d.label((1, 0))) == "b"
    assert g.label(d.label((1, 0, 1))) == "a"
    assert d.validate()


def test_sexp_roundtrip_with_labels():
    g = g0()
    d = delta0(g)
    text = d.to_sexp(g)
    assert text.startswith("(c (b")
    assert parse_sexp(text, g).table == d.explicit().table


@pytest.mark.parametrize("text", ["(a (b) (c))", "(a (b (c) (c)) (c (b) (b))) x",
                                  "(a (b (a) (c)) (c (b) (a)))", "(z (b (c) (c)) (c (b) (b)))"])
def test_sexp_rejects_malformed_trees(text):
    with pytest.raises(DecisionTreeError):
        parse_sexp(text, k3())


def test_number_of_decision_trees_on_three_edges():
    # 3 choices at the root, 2 at each depth-1 node, 1 below: 3 * 2 * 2
    assert sum(1 for _ in all_decision_trees((0, 1, 2))) == 12


@given(multigraphs(max_edges=6), seeds())
def test_random_trees_are_valid_and_reproducible(g, seed):
    d1 = random_decision_tree(g, seed)
    d2 = random_decision_tree(g, seed)
    if g.edge_count <= 6:
        assert d1.validate()
    # query order must not matter
    paths = [(), (1,), (0, 1), (1, 1, 0)][:max(g.edge_count, 1)]
    paths = [p for p in paths if len(p) < g.edge_count]
    assert [d1.label(p) for p in paths] == [d2.label(p) for p in reversed(paths)][::-1]


@given(multigraphs(max_edges=5), seeds())
def test_mirror_is_involution(g, seed):
    d = random_decision_tree(g, seed)
    mm = d.mirrored().mirrored()
    if g.edge_count:
        assert d.explicit().table == mm.explicit().table


def test_constant_depth_tree():
    d = constant_depth_tree((0, 1, 2), [2, 0, 1])
    assert d.label(()) == 2 and d.label((1,)) == 0 and d.label((0, 1)) == 1
