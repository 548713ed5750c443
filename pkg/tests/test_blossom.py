import pytest
from hypothesis import given, strategies as st

from tuttedelta.blossom import (BlossomError, all_trees_with_buds, flippable_edges,
                                forest_gf_via_trees, parse_word, roundtrip_ok, shape_word,
                                stable_class_gf, statistics_ok, theta_close, theta_open)
from tuttedelta.classical import blossoming_internal_active
from tuttedelta.combmap import m0, planar_catalogue, underlying_graph
from tuttedelta.graph import enumerate_spanning_forests, enumerate_spanning_trees
from tuttedelta.series.bruteforce import forest_polynomial

MAPS = [m for m in planar_catalogue(4) if m.edge_count]
maps = st.sampled_from(MAPS)


def test_m0_opening_word():
    tree = theta_open(m0(), 1 << 0, m0().root)
    assert tree.to_word() == "i(BB)x(L)L"
    assert shape_word(tree) == "x(BB)x(L)L"


@pytest.mark.parametrize("word", ["i(BB)x(L)L", "BL", "x(BL)", "i(LB)", ""])
def test_word_roundtrip(word):
    assert parse_word(word).to_word() == word


@pytest.mark.parametrize("word", ["i(B", "q", "x()L)", "i(BB))"])
def test_malformed_words(word):
    with pytest.raises(BlossomError):
        parse_word(word)


def test_unbalanced_tree_does_not_close():
    with pytest.raises(BlossomError) as err:
        theta_close(parse_word("BB"))
    assert err.value.code == "malformed_tree"


@given(maps, st.data())
def test_open_close_roundtrip(m, data):
    g = underlying_graph(m)
    forest = data.draw(st.sampled_from(list(enumerate_spanning_forests(g))))
    face = data.draw(st.sampled_from(m.faces()))
    anchor = data.draw(st.sampled_from(face))
    assert roundtrip_ok(m, forest, anchor)
    tree = theta_open(m, forest, anchor)
    assert statistics_ok(m, forest, tree)
    assert parse_word(tree.to_word()).to_word() == tree.to_word()


@given(maps)
def test_flips_are_internal_activities(m):
    g = underlying_graph(m)
    for t in enumerate_spanning_trees(g):
        tree = theta_open(m, t, m.root)
        assert flippable_edges(tree) == blossoming_internal_active(m, t, "definition")


@given(maps)
def test_stable_classes_sum_to_forest_polynomial(m):
    for face in m.faces():
        assert forest_gf_via_trees(m, face[0]) == forest_polynomial(m)


def test_every_opened_tree_has_a_product_class():
    count = 0
    for tree in all_trees_with_buds(3):
        stable_class_gf(tree)  # raises if the class is not u (1 + u)^b
        count += 1
    assert count > 0
