"""Radii of convergence of forested-map series, to arbitrary precision.

For an Eulerian class with weight series D(y) = sum_k d_{2k+2} y^k the
pair (kappa, sigma) is found from the monotone equation
D(xi) + 2 xi D'(xi) = 1 (bisection on xi = kappa sigma^2), then
sigma = 1/(1 - D(xi)) and kappa = xi / sigma^2.  The radius of phi is
kappa/4, tau is kappa/4 for u <= 0 and the root of u phi'(tau) = 1 for
u > 0, and rho_u = tau - u phi(tau).

phi(x) = sum_i T_{2i} binom(2i - 1, i) x^i is summed numerically with
mpmath; the tetravalent and cubic classes also have closed forms, which
serve as the second route in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

import mpmath as mp

from .core import SeriesError
from .legged import four_eulerian_tree_count
from .presets import get_preset

DEFAULT_DPS = 40


@dataclass
class AsymptoticConstants:
    preset: str
    u: object
    kappa: mp.mpf
    sigma: mp.mpf
    tau: mp.mpf
    rho: mp.mpf
    residuals: tuple          # residuals of the two (kappa, sigma) equations
    dps: int


@dataclass(frozen=True)
class WeightSeries:
    """D, D' and the tree numbers T_{2i} of an Eulerian class."""
    D: Callable
    dD: Callable
    delta: object             # radius of D (mp.inf when entire)
    tree: Callable            # i -> T_{2i} as an mpf
    phi_closed: Optional[Callable] = None   # (x, deriv) -> phi or phi', if known


def weight_series(preset: str) -> WeightSeries:
    p = get_preset(preset)
    if p.name == "4-eulerian":
        @lru_cache(maxsize=None)
        def tree_exact(i):
            return sum((four_eulerian_tree_count(i, j) for j in range(0, i - 1)), Fraction(0))

        def tree(i):
            f = tree_exact(int(i))
            return mp.mpf(f.numerator) / f.denominator
        return WeightSeries(lambda y: y / (1 - y), lambda y: 1 / (1 - y) ** 2, mp.mpf(1), tree)
    if p.regular is not None and p.regular >= 4 and p.regular % 2 == 0:
        q = p.regular // 2
        # D(y) = y^(q-1); trees with 2i legs exist when (2i - 2) is a multiple of (2q - 2)

        def tree(i):
            legs = 2 * i
            if (legs - 2) % (2 * q - 2):
                return mp.mpf(0)
            k = (legs - 2) // (2 * q - 2)
            return mp.factorial((2 * q - 1) * k) / (mp.factorial(k) * mp.factorial((2 * q - 2) * k + 1))
        closed = _tetravalent_phi if q == 2 else None
        return WeightSeries(lambda y: y ** (q - 1), lambda y: (q - 1) * y ** (q - 2), mp.inf, tree, closed)
    raise SeriesError(f"no weight series for {preset!r}; use tetravalent, 2q-regular or 4-eulerian",
                      "unsupported")


def solve_kappa_sigma(ws: WeightSeries, dps: int = DEFAULT_DPS):
    """(kappa, sigma, xi) by bisection on D(xi) + 2 xi D'(xi) = 1."""
    with mp.workdps(dps + 10):
        g = lambda x: ws.D(x) + 2 * x * ws.dD(x) - 1  # noqa: E731
        lo = mp.mpf(0)
        hi = ws.delta if ws.delta != mp.inf else mp.mpf(1)
        if ws.delta == mp.inf:
            while g(hi) <= 0:
                hi *= 2
        else:
            hi = hi * (1 - mp.mpf(10) ** (-dps))
            if g(hi) <= 0:
                raise SeriesError("D does not diverge at its radius", "divergent_D")
        tol = mp.mpf(10) ** (-(dps + 5))
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if g(mid) > 0:
                hi = mid
            else:
                lo = mid
        xi = (lo + hi) / 2
        sigma = 1 / (1 - ws.D(xi))
        kappa = xi / sigma ** 2
        return +kappa, +sigma, +xi


def kappa_sigma_residuals(ws: WeightSeries, kappa, sigma):
    x = kappa * sigma ** 2
    return (sigma * ws.D(x) + 1 - sigma, 2 * kappa * sigma ** 3 * ws.dD(x) - 1)


def _phi_term(ws, x, deriv=0):
    def term(i):
        i = int(i)
        c = ws.tree(i) * mp.binomial(2 * i - 1, i)
        if deriv == 0:
            return c * x ** i
        return c * i * x ** (i - 1)
    return term


def phi(ws: WeightSeries, x, deriv: int = 0, radius=None):
    """phi(x) (or phi'(x)).

    Inside the disc (x below 0.999 of ``radius``) the terms decay
    geometrically and are added directly; at the radius itself mpmath's
    series acceleration takes over."""
    term = _phi_term(ws, x, deriv)
    if radius is None or x >= radius * mp.mpf("0.999"):
        return mp.nsum(term, [2, mp.inf])
    eps = mp.mpf(10) ** (-mp.mp.dps - 5)
    total, i, quiet = mp.mpf(0), 2, 0
    while quiet < 8:
        t = term(i)
        total += t
        quiet = quiet + 1 if t == 0 or abs(t) < eps * abs(total) else 0
        i += 1
    return total


def _tetravalent_phi(x, deriv=0):
    a, b = mp.mpf(1) / 3, mp.mpf(2) / 3
    if deriv == 0:
        return x * (mp.hyp2f1(a, b, 2, 27 * x) - 1)
    return mp.hyp2f1(a, b, 2, 27 * x) - 1 + 3 * x * mp.hyp2f1(a + 1, b + 1, 3, 27 * x)


def asymptotic_constants(preset: str, u=0, dps: int = DEFAULT_DPS,
                         route: str = "closed") -> AsymptoticConstants:
    """kappa, sigma, tau and rho_u for an Eulerian class (tetravalent,
    2q-regular, 4-eulerian).  The cubic class has its own closed form, see
    :func:`cubic_rho`.

    ``route="closed"`` evaluates phi through a hypergeometric closed form
    when the class has one (tetravalent); ``route="series"`` always sums
    the tree series.  For u > 0 the series route is slow, because tau sits
    close to the radius of phi when u is small."""
    name = get_preset(preset).name
    if name == "cubic":
        return AsymptoticConstants("cubic", u, None, None, None, cubic_rho(u, dps), (), dps)
    with mp.workdps(dps + 10):
        u = mp.mpf(u) if not isinstance(u, mp.mpf) else u
        if u < -1:
            raise SeriesError("u must be at least -1", "out_of_range")
        ws = weight_series(name)
        if route == "closed" and ws.phi_closed is not None:
            phi_at = ws.phi_closed
        elif route in ("closed", "series"):
            def phi_at(x, deriv=0):
                return phi(ws, x, deriv, kappa / 4)
        else:
            raise SeriesError(f"unknown route {route!r}")
        kappa, sigma, _ = solve_kappa_sigma(ws, dps)
        res = kappa_sigma_residuals(ws, kappa, sigma)
        edge = kappa / 4
        if u <= 0:
            tau = edge
        else:
            # phi' increases from 0 to +infinity on [0, kappa/4): bisect
            lo, hi = mp.mpf(0), edge
            tol = mp.mpf(10) ** (-dps)
            while hi - lo > tol * edge:
                mid = (lo + hi) / 2
                if u * phi_at(mid, 1) > 1:
                    hi = mid
                else:
                    lo = mid
            tau = (lo + hi) / 2
        rho = tau - u * phi_at(tau)
        return AsymptoticConstants(name, u, +kappa, +sigma, +tau, +rho, tuple(+r for r in res), dps)


# ---------------------------------------------------------------------------
# closed forms


def tetravalent_phi_closed(x, route: str = "hypergeometric"):
    """phi(x) = x (2F1(1/3, 2/3; 2; 27x) - 1); at x = 1/27 also sqrt(3)/(12 pi) - 1/27."""
    if route == "hypergeometric":
        return x * (mp.hyp2f1(mp.mpf(1) / 3, mp.mpf(2) / 3, 2, 27 * x) - 1)
    if route == "gamma":
        if x != mp.mpf(1) / 27:
            raise SeriesError("the gamma-function value is only available at 1/27")
        return mp.sqrt(3) / (12 * mp.pi) - mp.mpf(1) / 27
    raise SeriesError(f"unknown route {route!r}")


def tetravalent_rho_closed(u, dps: int = DEFAULT_DPS):
    """(1 + u)/27 - u sqrt(3)/(12 pi) for u in [-1, 0]."""
    with mp.workdps(dps + 10):
        u = mp.mpf(u)
        if not -1 <= u <= 0:
            raise SeriesError("the affine closed form holds for u in [-1, 0]", "out_of_range")
        return +((1 + u) / 27 - u * mp.sqrt(3) / (12 * mp.pi))


def cubic_rho_formula(u, dps: int = DEFAULT_DPS):
    """The algebraic closed form of rho_u for cubic maps on [-1, 0].

    The expression is 0/0 at u = -1; there the limit is taken."""
    with mp.workdps(dps + 20):
        def f(v):
            pi = mp.pi
            num = (3 * (1 - v ** 2) ** 2 * pi ** 4 + 96 * v ** 2 * pi ** 2 * (1 - v ** 2) + 512 * v ** 4
                   + 16 * v * mp.sqrt(2) * (pi ** 2 * (1 - v ** 2) + 8 * v ** 2) ** mp.mpf(1.5))
            return num / (192 * pi ** 4 * (1 + v) ** 3)
        u = mp.mpf(u)
        if not -1 <= u <= 0:
            raise SeriesError("the closed form holds for u in [-1, 0]", "out_of_range")
        if u == -1:
            return +mp.limit(f, -1, direction=1)
        return +f(u)


def psi_values(route: str = "closed"):
    """(psi1(1/64), psi2(1/64)) for the cubic class.

    ``closed``: sqrt(2)/(24 pi) and 1/2 - sqrt(2)/pi.
    ``series``: psi1 through 2F1(1/4, 3/4; 2; 1)/64, psi2 summed term by term.
    """
    if route == "closed":
        return mp.sqrt(2) / (24 * mp.pi), mp.mpf(1) / 2 - mp.sqrt(2) / mp.pi
    if route == "series":
        p1 = mp.hyp2f1(mp.mpf(1) / 4, mp.mpf(3) / 4, 2, 1) / 64

        def t2(i):
            i = int(i)
            return mp.factorial(4 * i - 2) / (mp.factorial(i) ** 2 * mp.factorial(2 * i - 1)) / mp.mpf(64) ** i
        return p1, mp.nsum(t2, [1, mp.inf])
    raise SeriesError(f"unknown route {route!r}")


def cubic_rho_system(u, dps: int = DEFAULT_DPS, route: str = "closed"):
    """rho_u for cubic maps, u in [-1, 0], from the critical parabola.

    On the parabola 64 tau = (1 - 4 sigma)^2, write s = sqrt(1 - 4 sigma).
    Then sigma = u phi2(tau, sigma) becomes
    (1 + u) s^2 + (4 u psi2 - 2 u) s + (u - 1) = 0 with psi2 = psi2(1/64),
    and rho = tau - u phi1(tau, sigma) = (1 + u) tau - u s^3 psi1(1/64).
    """
    with mp.workdps(dps + 10):
        u = mp.mpf(u)
        if not -1 <= u <= 0:
            raise SeriesError("the parabola system applies for u in [-1, 0]", "out_of_range")
        p1, p2 = psi_values(route)
        a, b, c = 1 + u, 4 * u * p2 - 2 * u, u - 1
        if a == 0:
            s = -c / b
        else:
            disc = mp.sqrt(b * b - 4 * a * c)
            roots = [(-b + disc) / (2 * a), (-b - disc) / (2 * a)]
            s = min(r for r in roots if r > 0)
        tau = s ** 4 / 64
        return +((1 + u) * tau - u * s ** 3 * p1)


def cubic_rho(u, dps: int = DEFAULT_DPS):
    return cubic_rho_formula(u, dps)


# ---------------------------------------------------------------------------
# coefficient ratios


def _mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def coefficient_ratios(coeffs: list) -> list:
    """[(n, f_{n+1}/f_n)] over consecutive non-zero coefficients."""
    out = []
    for n in range(len(coeffs) - 1):
        if coeffs[n] and coeffs[n + 1]:
            out.append((n, _mpf(coeffs[n + 1]) / _mpf(coeffs[n])))
    return out


def ratio_check(coeffs: list, target, by_n: int, rel: float = 0.10) -> Optional[int]:
    """Smallest n <= by_n from which every ratio up to by_n stays within rel of
    target, or None."""
    ratios = [(n, r) for n, r in coefficient_ratios(coeffs) if n <= by_n]
    good = None
    for n, r in reversed(ratios):
        if abs(r - target) <= rel * target:
            good = n
        else:
            break
    return good
