"""Differential equations in z for forested-map series, checked by substitution.

Each equation is a polynomial in z, u and the derivatives of one series.
Substituting a truncated series gives a residual series; its coefficients
vanish exactly up to ``order - slack``, where the slack is the highest
derivative order (each derivative costs one order of the truncation).

The quartic F equation is also re-derived from scratch by elimination
(:func:`derive_quartic_F_ode`), so the stored polynomial is never the only
witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import sympy

from .core import SeriesError, TruncatedSeries, series, u_sym, z_sym
from .systems import series_F, series_G, series_H

D1, D2, D3 = sympy.symbols("D1 D2 D3")
Y = sympy.Symbol("Y")

# tetravalent dF/dz: polynomial in F' (D1), F'' (D2), F''' (D3)
QUARTIC_F = """
9*D1**2*D2**5*u**6 + 36*D1**2*D2**3*D3*u**5*z + 144*D1**2*D2**4*u**5
- 12*(21*z-1)*D1*D2**5*u**5 + 432*D1**2*D2**2*D3*u**4*z
- 48*(24*z-1)*D1*D2**3*D3*u**4*z + 864*D1**2*D2**3*u**4 - 96*(27*z-2)*D1*D2**4*u**4
+ 4*(27*z-1)*(15*z-1)*D2**5*u**4 + 1728*D1**2*D2*D3*u**3*z
- 288*(21*z-2)*D1*D2**2*D3*u**3*z + 10368*D1*D3**2*u**2*z**3
+ 16*(27*z-1)*(21*z-1)*D2**3*D3*u**3*z + 2304*D1**2*D2**2*u**3
- 288*(31*z-4)*D1*D2**3*u**3 - 64*(6*u*z-162*z**2+33*z-1)*D2**4*u**3
+ 2304*D1**2*D3*u**2*z - 2304*(6*z-1)*D1*D2*D3*u**2*z
- 192*(8*u*z-54*z**2+29*z-1)*D2**2*D3*u**2*z - 768*(2*u+189*z-7)*D3**2*u*z**3
+ 2304*D1**2*D2*u**2 - 3072*(3*z-1)*D1*D2**2*u**2
- 192*(24*u*z-27*z**2+55*z-2)*D2**3*u**2 - 1536*(21*z-2)*D1*D3*u*z
- 768*(12*u*z+81*z**2+24*z-1)*D2*D3*u*z + 1536*(9*z+2)*D1*D2*u
- 512*(39*u*z+81*z**2+51*z-2)*D2**2*u
+ 36864*D1*z - 1024*(12*u*z-162*z**2+33*z-1)*D3*z - 1024*(36*u*z+27*z-1)*D2 - 24576*z
"""

# tetravalent H: polynomial in H (Y), H' (D1), H'' (D2)
QUARTIC_H = """
3*(u+1)*u**2*D1**2*D2 + 12*u**2*z*D1*D2 + 6*(u-8)*u*D1**2 + 240*Y
+ 4*(6*u*z-54*z+1)*D1 + 4*(3*u*z**2+30*u*Y+27*z**2-z)*D2 + 24*z**2
"""

# cubic W = 2G - z/u: polynomial in W (Y), W' (D1), W'' (D2)
CUBIC_W = """
(3*u**4*z*D1**4 - u**3*(5*Y*u-u*z+z)*D1**3 + 4*(u+1)*(5*Y*u-u*z+z)**2)*D2
- 48*u**2*z*(u+1)*D1**3 + 8*u*(u+1)*(5*Y*u-u*z+z)*D1**2
+ 4*(u**2-1)*(5*Y*u-u*z+z)*D1
"""


@dataclass(frozen=True)
class OdeSpec:
    name: str
    preset: str
    polynomial: str
    slack: int
    description: str


ODES = {
    "quartic_Fz": OdeSpec("quartic_Fz", "tetravalent", QUARTIC_F, 3,
                          "order 2, degree 7 equation for dF/dz (tetravalent)"),
    "quartic_H": OdeSpec("quartic_H", "tetravalent", QUARTIC_H, 2,
                         "order 2, degree 3 equation for H (tetravalent)"),
    "cubic_G_W": OdeSpec("cubic_G_W", "cubic", CUBIC_W, 2,
                         "order 2 equation for W = 2G - z/u (cubic)"),
}


def _parse(text: str):
    return sympy.sympify(text, locals={"u": u_sym, "z": z_sym, "Y": Y,
                                       "D1": D1, "D2": D2, "D3": D3})


def evaluate_polynomial(expr, values: dict, main: str, order: int,
                        u=None) -> TruncatedSeries:
    """Substitute series for the symbols of ``values`` in a polynomial whose
    remaining coefficients are polynomials in z and u."""
    syms = list(values)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    powers = {s: [None] for s in syms}
    out = None
    for mon, coeff in poly.terms():
        if u is not None:
            coeff = coeff.subs(u_sym, u)
        term = series(coeff, main, order)
        for s, k in zip(syms, mon):
            if k == 0:
                continue
            cache = powers[s]
            while len(cache) <= k:
                cache.append(values[s] if len(cache) == 1 else cache[-1] * values[s])
            term = term * cache[k]
        out = term if out is None else out + term
    return out


def ode_residual(which: str, order: int, u=None) -> TruncatedSeries:
    """Residual series of a stored ODE evaluated on the computed series.

    ``order`` is the truncation order of F (or H, or G).  The result is
    known through ``order - slack``; it should be identically zero there.
    """
    if which not in ODES:
        raise SeriesError(f"unknown equation {which!r}; choose from {sorted(ODES)}", "unknown_ode")
    spec = ODES[which]
    expr = _parse(spec.polynomial)
    if which == "quartic_Fz":
        F = series_F("tetravalent", order, u)
        d1 = F.diff("z")
        d2 = d1.diff("z")
        values = {D1: d1, D2: d2, D3: d2.diff("z")}
    elif which == "quartic_H":
        H = series_H("tetravalent", order, u)
        d1 = H.diff("z")
        values = {Y: H, D1: d1, D2: d1.diff("z")}
    else:
        if u is not None and u == 0:
            raise SeriesError("W = 2G - z/u needs u != 0", "unsupported")
        # substitute uW = 2uG - z, which avoids dividing by u, and clear the
        # resulting powers of u from the polynomial
        G = series_G("cubic", order, u)
        uval = series(u_sym if u is None else sympy.Rational(u), "z", order)
        uW = G * uval * 2 - series(z_sym, "z", order)
        uW1 = uW.diff("z")
        values = {Y: uW, D1: uW1, D2: uW1.diff("z")}
        expr = sympy.expand(expr.subs({Y: Y / u_sym, D1: D1 / u_sym, D2: D2 / u_sym}) * u_sym ** 8)
        expr = sympy.expand(sympy.cancel(expr))
    return evaluate_polynomial(expr, values, "z", order, u).truncate(order - spec.slack)


@dataclass
class OdeReport:
    which: str
    order: int
    checked_through: int
    ok: bool
    first_nonzero: object = None

    def __bool__(self):
        return self.ok


def check_ode(which: str, order: int, u=None) -> OdeReport:
    res = ode_residual(which, order, u)
    first = None
    for k in range(res.order + 1):
        c = res.coefficient(z=k)
        if c != 0:
            first = (k, c)
            break
    return OdeReport(which, order, res.order, first is None, first)


def derive_quartic_F_ode():
    """Re-derive the tetravalent equation for dF/dz by elimination.

    With R = z + u phi(R) and F' = theta(R), where
    x(27x - 1) phi'' + 6 phi + 6x = 0 and 3 theta = 2(27x - 1) phi' - 42 phi + 12x,
    the derivatives F', F'', F''' are rational in R and q = phi'(R).  The
    first is linear in q; substituting it into the other two and taking the
    resultant in R leaves a polynomial in F', F'', F''', z, u.  The factor
    that involves F''' is returned, scaled so that F'^2 F''^5 has coefficient 9 u^6.
    """
    R, q = sympy.symbols("R q")
    z, u = z_sym, u_sym
    p = (R - z) / u
    phi2 = -6 * (p + R) / (R * (27 * R - 1))
    dR = 1 / (1 - u * q)
    th1 = 4 * (R * q - p) / R
    th2 = 4 * (phi2 - (R * q - p) / R ** 2)
    e1 = 3 * D1 - (2 * (27 * R - 1) * q - 42 * p + 12 * R)
    q_sol = sympy.solve(e1, q)[0]
    e2 = sympy.numer(sympy.together((D2 - th1 * dR).subs(q, q_sol)))
    e3 = sympy.numer(sympy.together((D3 - th2 * dR ** 2 - th1 * u * phi2 * dR ** 3).subs(q, q_sol)))
    res = sympy.resultant(sympy.Poly(sympy.expand(e2), R), sympy.Poly(sympy.expand(e3), R))
    res = res.as_expr() if hasattr(res, "as_expr") else res
    _, factors = sympy.factor_list(res)
    main = [f for f, _ in factors if f.has(D3)]
    if len(main) != 1:
        raise SeriesError("elimination did not isolate a single equation", "ode")
    poly = sympy.expand(main[0])
    lead = sympy.Poly(poly, D1, D2, D3, z, u).coeff_monomial(D1 ** 2 * D2 ** 5 * u ** 6)
    return sympy.expand(poly / lead * 9)


def stored_polynomial(which: str):
    return _parse(ODES[which].polynomial)
