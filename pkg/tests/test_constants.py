import mpmath as mp
import pytest

from tuttedelta.series import SeriesError, mullin_coefficients
from tuttedelta.series.constants import (asymptotic_constants, coefficient_ratios,
                                         cubic_rho_formula, cubic_rho_system, kappa_sigma_residuals,
                                         phi, psi_values, ratio_check, tetravalent_phi_closed,
                                         tetravalent_rho_closed, weight_series)

U_RANGE = [-1, mp.mpf(-3) / 4, mp.mpf(-1) / 3, 0]


@pytest.mark.parametrize("u", U_RANGE)
def test_tetravalent_rho_two_routes(u):
    assert mp.almosteq(asymptotic_constants("tetravalent", u).rho, tetravalent_rho_closed(u),
                       mp.mpf(10) ** -30)


@pytest.mark.parametrize("u", U_RANGE)
def test_cubic_rho_three_routes(u):
    a = cubic_rho_formula(u)
    assert mp.almosteq(a, cubic_rho_system(u), mp.mpf(10) ** -30)
    assert mp.almosteq(a, cubic_rho_system(u, route="series"), mp.mpf(10) ** -12)


@pytest.mark.parametrize("u", [mp.mpf(1) / 2, 2])
def test_tetravalent_positive_u_from_hypergeometric(u):
    # tau solves u phi'(tau) = 1, rho = tau - u phi(tau), with phi in closed form
    with mp.workdps(40):
        def dphi(x):
            return mp.diff(tetravalent_phi_closed, x)

        tau = mp.findroot(lambda x: u * dphi(x) - 1, (mp.mpf(1) / 1000, mp.mpf(1) / 27 - 1e-12),
                          solver="bisect")
        want = tau - u * tetravalent_phi_closed(tau)
        got = asymptotic_constants("tetravalent", u).rho
    assert mp.almosteq(got, want, mp.mpf(10) ** -20)


def test_closed_forms_outside_their_range():
    with pytest.raises(SeriesError):
        tetravalent_rho_closed(1)
    with pytest.raises(SeriesError):
        cubic_rho_formula(1)


@pytest.mark.parametrize("x", [mp.mpf(1) / 100, mp.mpf(1) / 40, mp.mpf(1) / 30])
def test_phi_sum_matches_hypergeometric(x):
    with mp.workdps(40):
        summed = phi(weight_series("tetravalent"), x, radius=mp.mpf(1) / 27)
        assert mp.almosteq(summed, tetravalent_phi_closed(x), mp.mpf(10) ** -30)


def test_phi_at_the_singularity():
    x = mp.mpf(1) / 27
    assert mp.almosteq(tetravalent_phi_closed(x), tetravalent_phi_closed(x, "gamma"))


def test_psi_routes():
    with mp.workdps(30):
        closed, summed = psi_values(), psi_values("series")
    for a, b in zip(closed, summed):
        assert mp.almosteq(a, b, mp.mpf(10) ** -12)


def test_kappa_sigma_residuals_small():
    for name in ("tetravalent", "6-regular", "4-eulerian"):
        with mp.workdps(50):
            c = asymptotic_constants(name, 0)
            res = kappa_sigma_residuals(weight_series(name), c.kappa, c.sigma)
            assert max(abs(r) for r in res) < mp.mpf(10) ** -30


@pytest.mark.parametrize("p, growth", [(4, 27), (3, 64)])
def test_spanning_tree_growth_matches_rho_at_zero(p, growth):
    name = {3: "cubic", 4: "tetravalent"}[p]
    assert mp.almosteq(asymptotic_constants(name, 0).rho, mp.mpf(1) / growth)
    coeffs = mullin_coefficients(p, 60)
    seq = [coeffs.get(n, 0) for n in range(61)]
    ratios = [r for _, r in coefficient_ratios(seq)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] < growth and abs(ratios[-1] - growth) < 0.1 * growth


def test_ratio_check_semantics():
    assert ratio_check([1, 10, 100, 1000], 10, 2) == 0
    assert ratio_check([1, 2, 20, 200], 10, 2) == 1
    assert ratio_check([1, 2, 4], 10, 1) is None
