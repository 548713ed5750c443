import sympy
from hypothesis import given, settings

from strategies import multigraphs
from tuttedelta.graph import enumerate_spanning_forests, enumerate_spanning_trees, g0, k3
from tuttedelta.poly import parse_polynomial
from tuttedelta.tutte import (forest_polynomial_u, proper_colourings, sandpile_recurrent_gf,
                              specialize, tutte, tutte_del_contract, tutte_subgraph_sum)


def test_small_golden_values():
    assert tutte(k3()) == parse_polynomial("x^2 + x + y")
    assert tutte(g0()) == parse_polynomial("x^2 + x + x*y + y + y^2")


@given(multigraphs(max_edges=7))
def test_subgraph_sum_equals_deletion_contraction(g):
    assert tutte_subgraph_sum(g) == tutte_del_contract(g)


@given(multigraphs(max_edges=6))
def test_evaluations_count_objects(g):
    t = tutte(g)
    assert t.is_nonnegative()
    assert specialize(t, "trees") == len(enumerate_spanning_trees(g))
    assert specialize(t, "forests") == len(enumerate_spanning_forests(g))
    assert specialize(t, "forest_u") == forest_polynomial_u(g)
    assert specialize(t, (2, 2)) == 2 ** g.edge_count


@settings(max_examples=25)
@given(multigraphs(max_vertices=4, max_edges=5))
def test_chromatic_polynomial(g):
    chrom = specialize(tutte(g), "chromatic", g)
    q = chrom.gens[0]
    for k in range(4):
        assert chrom.eval(k) == proper_colourings(g, k)


@settings(max_examples=25)
@given(multigraphs(max_vertices=4, max_edges=5))
def test_sandpile_levels_equal_t_at_one(g):
    gf = sandpile_recurrent_gf(g, 0)
    y = sympy.Symbol("y")
    t = tutte(g)
    expected = sum(c * y ** j for (i, j), c in t.terms.items())
    assert sympy.expand(gf.as_expr().subs(gf.gens[0], y) - expected) == 0


def test_sandpile_g0():
    gf = sandpile_recurrent_gf(g0(), 0)
    assert gf.all_coeffs() == [1, 2, 2]
