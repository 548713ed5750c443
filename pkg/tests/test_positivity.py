import pytest
import sympy

from tuttedelta.series import series_F, solve_RS
from tuttedelta.series.core import series, u_sym, z_sym
from tuttedelta.series.positivity import check_positivity, mu_table, u1_positivity


@pytest.mark.parametrize("preset, what, n", [
    ("cubic", "F", 1), ("cubic", "R-z", 1), ("cubic", "S", 1),
    ("tetravalent", "F", 1), ("tetravalent", "R-z", 1),
    ("6-regular", "Rn", 2), ("eulerian", "F", 1), ("4-eulerian", "F", 1),
])
def test_positive_in_u_plus_one(preset, what, n):
    rep = check_positivity(preset, what, 6, n)
    assert rep.ok, rep.negatives[:3]
    assert rep.checked > 0


def test_negative_control():
    # 1 - u + u^2 = 3 - 3 mu + mu^2 with mu = u + 1
    s = series(z_sym * (1 - u_sym + u_sym ** 2), "z", 2)
    rep = u1_positivity(s, "control")
    assert not rep.ok
    assert rep.negatives == [((1, 0), [(1, -3)])]


def test_mu_table_round_trip():
    F = series_F("cubic", 4)
    mu = sympy.Symbol("mu")
    for (a, c), coeffs in mu_table(F).items():
        back = sum(k * (u_sym + 1) ** i for i, k in enumerate(coeffs))
        assert sympy.expand(back - F.u_polynomial(a).as_expr()) == 0


def test_tetravalent_S_vanishes():
    assert solve_RS("tetravalent", 8).S.is_zero()
