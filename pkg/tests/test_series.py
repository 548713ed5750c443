from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tuttedelta.series import (SeriesError, TruncatedSeries, get_preset, mullin_coefficients,
                               series_F, series_G, series_H, solve_RS)
from tuttedelta.series.bruteforce import brute_force_forested, map_count
from tuttedelta.series.core import geometric, mu_coefficients, series, u_sym, z_sym
from tuttedelta.series.legged import (catalan, eulerian_tree_count, legged_trees,
                                      regular_tree_count)
from tuttedelta.series.presets import (coefficient_tables, tables_equal, tree_counts_closed_form,
                                       tree_counts_from_weights)
from tuttedelta.series.systems import (check_double_count, check_routes, check_schedules,
                                       cycle_series, eulerian_4euler_check, series_H_by_derivative)

small_polys = st.lists(st.tuples(st.integers(0, 5), st.integers(0, 3), st.integers(-4, 4)),
                       max_size=6).map(lambda terms: sum(c * z_sym ** a * u_sym ** b
                                                         for a, b, c in terms))


def _trunc(expr, n):
    p = sympy.Poly(sympy.expand(expr), z_sym)
    return sum(c * z_sym ** m[0] for m, c in zip(p.monoms(), p.coeffs()) if m[0] <= n)


@given(small_polys, small_polys, st.integers(0, 6))
def test_truncated_product_matches_sympy(p, q, n):
    got = (series(p, "z", n) * series(q, "z", n)).as_expr()
    assert sympy.expand(got - _trunc(p * q, n)) == 0


@given(small_polys, st.integers(1, 6))
def test_geometric_inverts_one_minus(p, n):
    x = series(z_sym * p, "z", n)
    assert (geometric(x) * (1 - x)).as_expr() == 1


def test_series_rejects_bad_main_variable():
    with pytest.raises(SeriesError):
        TruncatedSeries(1, "u", 3)


def test_mu_basis():
    # (u + 1)^2 + 3 = mu^2 + 3 with mu = u + 1
    assert mu_coefficients(sympy.Poly((u_sym + 1) ** 2 + 3, u_sym)) == [3, 0, 1]


@pytest.mark.parametrize("p", [3, 4, 5, 6])
def test_legged_trees_match_closed_form(p):
    trees = legged_trees({p: 1}, 12, 12)
    for legs in range(1, 13):
        edges, count = regular_tree_count(p, legs)
        got = trees.count(legs)
        assert got == ({edges: count} if count else {})


def test_binary_trees_are_catalan():
    trees = legged_trees({3: 1}, 10, 10)
    for k in range(1, 8):
        assert trees.count(k + 2) == {k - 1: catalan(k)}


def test_eulerian_tree_counts():
    trees = legged_trees(lambda k: 1 if k % 2 == 0 else 0, 5, 8)
    for i in range(1, 5):
        assert trees.count(2 * i) == {j: eulerian_tree_count(i, j) for j in range(6)
                                      if eulerian_tree_count(i, j)}


@pytest.mark.parametrize("name", ["cubic", "tetravalent", "eulerian", "4-eulerian"])
def test_tree_counts_two_ways(name):
    preset = get_preset(name)
    assert tree_counts_closed_form(preset, 8, 4) == tree_counts_from_weights(preset, 8, 4)


@pytest.mark.parametrize("name", ["cubic", "tetravalent", "6-regular", "eulerian", "4-eulerian"])
def test_table_routes_agree(name):
    preset = get_preset(name)
    t_order = 4 if preset.keeps_t else 0
    assert tables_equal(coefficient_tables(preset, 5, t_order, "table"),
                        coefficient_tables(preset, 5, t_order, "weights"))
    assert check_routes(name, 5)


@pytest.mark.parametrize("name", ["cubic", "tetravalent", "eulerian"])
def test_schedules_agree(name):
    assert check_schedules(name, 5)


@pytest.mark.parametrize("name, faces", [("tetravalent", 3), ("tetravalent", 4),
                                         ("tetravalent", 5), ("cubic", 3), ("cubic", 4)])
def test_series_against_map_brute_force(name, faces):
    F = series_F(name, faces)
    assert F.u_polynomial(faces) == brute_force_forested(name, faces)


@pytest.mark.parametrize("p, faces", [(4, 3), (4, 4), (4, 5), (3, 4)])
def test_mullin_counts_spanning_trees(p, faces):
    name = {3: "cubic", 4: "tetravalent"}[p]
    brute = brute_force_forested(name, faces).as_expr().subs(u_sym, 0)
    assert mullin_coefficients(p, faces)[faces] == brute


def test_tetravalent_tree_rooted_values():
    c = mullin_coefficients(4, 7)
    assert [c[f] for f in range(3, 8)] == [2, 20, 252, 3696, 60060]


def test_tetravalent_map_count():
    assert map_count("tetravalent", 4) == 9


@pytest.mark.parametrize("name", ["cubic", "tetravalent", "eulerian"])
def test_double_count_and_derivative_route(name):
    sysm = solve_RS(name, 6)
    F = series_F(name, 6, system=sysm)
    H = series_H(name, 6, system=sysm)
    assert check_double_count(F, H, name)
    if get_preset(name).has_S:
        with pytest.raises(SeriesError):
            series_H_by_derivative(name, 6)
    else:
        assert series_H_by_derivative(name, 6) == H


def test_odd_classes_beyond_cubic_are_refused():
    with pytest.raises(SeriesError):
        get_preset("5-regular")


def test_cycle_class_matches_direct_formula():
    assert series_F("cycle", 6) == cycle_series(6)


def test_G_has_a_factor_z():
    G = series_G("cubic", 5)
    assert G.valuation() >= 1


@pytest.mark.parametrize("form, holds", [("rooted-chain", True), ("single", False)])
def test_substitution_identity(form, holds):
    assert bool(eulerian_4euler_check(4, form=form)) is holds


@settings(max_examples=10)
@given(st.sampled_from([-1, 0, 1, 2, Fraction(1, 2)]))
def test_specialising_u_commutes(u):
    full = series_F("cubic", 5)
    assert full.substitute("u", u) == series_F("cubic", 5, u=u)
