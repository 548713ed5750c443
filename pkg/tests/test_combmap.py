import pytest
from hypothesis import given, strategies as st

from tuttedelta.combmap import (CombMap, MapError, canonical_form, dual_map, enumerate_rooted_maps,
                                faces_genus, format_map, is_planar, m0, map_contract, map_delete,
                                mirror, motion_order, parse_map, planar_catalogue,
                                relabel_canonical, torus_two_loops, underlying_graph)
from tuttedelta.graph import enumerate_spanning_trees, mask_of
from tuttedelta.tutte import tutte_subgraph_sum

CATALOGUE = planar_catalogue(4)
maps = st.sampled_from(CATALOGUE).filter(lambda m: m.edge_count > 0)


def _names(m, hs):
    return [m.names[h] for h in hs]


def test_m0_counts():
    m = m0()
    g = underlying_graph(m)
    faces, genus = faces_genus(m)
    assert (g.vertex_count, g.edge_count, len(faces), genus) == (3, 4, 3, 0)


def test_m0_tour_and_edge_orders():
    m = m0()
    t = mask_of([1, 3])
    mo = motion_order(m, t)
    assert _names(m, mo.half_edge_order) == ["a", "b", "c", "b'", "d", "c'", "a'", "d'"]
    assert mo.edge_order == (0, 1, 2, 3)
    assert motion_order(mirror(m), t).edge_order == (3, 0, 2, 1)


def test_m0_mirror():
    mm = mirror(m0())
    assert [_names(mm, c) for c in mm.vertices()] == [["a", "d", "b"], ["a'", "c'", "d'"], ["b'", "c"]]
    assert mm.names[mm.root] == "d"


def test_m0_delete_keeps_planarity():
    small = map_delete(m0(), 2)
    assert small.edge_count == 3 and is_planar(small)


def test_torus_map():
    assert faces_genus(torus_two_loops())[1] == 1
    assert not is_planar(torus_two_loops())


@pytest.mark.parametrize("bad, code", [
    ("nh 2\nsigma 0 1\nalpha 0 0\nroot 0\n", "domain"),
    ("nh 4\nsigma 0 1\nsigma 2 3\nalpha 0 1\nalpha 2 3\nroot 0\n", "not_transitive"),
    ("nh 2\nsigma 0\nalpha 0 1\nroot 0\n", "sigma_not_permutation"),
])
def test_invalid_maps_are_rejected(bad, code):
    with pytest.raises(MapError) as err:
        parse_map(bad)
    assert err.value.code == code


def test_alpha_fixed_point_is_rejected():
    with pytest.raises(MapError) as err:
        CombMap([1, 0], [0, 1], 0)
    assert err.value.code == "alpha_fixed_point"


def test_isthmus_delete_and_loop_contract_are_refused():
    isthmus = CombMap.from_cycles([[0], [1]], [(0, 1)], 0)
    with pytest.raises(MapError):
        map_delete(isthmus, 0)
    loop = CombMap.from_cycles([[0, 1]], [(0, 1)], 0)
    with pytest.raises(MapError):
        map_contract(loop, 0)


@pytest.mark.parametrize("n, planar, total", [(1, 2, 2), (2, 9, 10), (3, 54, 74),
                                              (4, 378, 706)])
def test_rooted_map_counts(n, planar, total):
    # planar: 2 * 3^n (2n)! / (n! (n+2)!); all genera: 1, 2, 10, 74, 706
    assert len(enumerate_rooted_maps(n)) == planar
    assert len(enumerate_rooted_maps(n, genus=None)) == total


def test_tetravalent_maps():
    assert len(enumerate_rooted_maps(2, degree_filter={4})) == 2
    assert len(enumerate_rooted_maps(4, degree_filter={4})) == 9


@given(maps)
def test_format_parse_roundtrip(m):
    back = parse_map(format_map(m))
    assert canonical_form(back) == canonical_form(m)


@given(maps)
def test_motion_function_is_cyclic(m):
    g = underlying_graph(m)
    for t in enumerate_spanning_trees(g):
        assert sorted(motion_order(m, t).half_edge_order) == sorted(m.sigma)


@given(maps)
def test_dual_is_involutive_and_swaps_counts(m):
    d = dual_map(m)
    assert len(d.vertices()) == len(m.faces()) and len(d.faces()) == len(m.vertices())
    assert dual_map(d) == m
    assert mirror(mirror(m)).sigma == m.sigma


@given(maps, st.data())
def test_minors_match_graph_minors(m, data):
    g = underlying_graph(m)
    e = data.draw(st.sampled_from(sorted(g.edges)))
    if not g.is_isthmus(e):
        d = map_delete(m, e)
        if d is not None:
            assert is_planar(d)
            assert tutte_subgraph_sum(underlying_graph(d)) == tutte_subgraph_sum(g.delete(e))
    if not g.is_loop(e):
        c = map_contract(m, e)
        if c is not None:
            assert is_planar(c)
            assert tutte_subgraph_sum(underlying_graph(c)) == tutte_subgraph_sum(g.contract(e))


@given(maps)
def test_relabelling_is_canonical(m):
    r = relabel_canonical(m)
    assert canonical_form(r) == canonical_form(m)
