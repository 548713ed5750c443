"""Coefficients of forested-map series, checked against brute force, and
the radii of convergence they lead to.

Run with ``python demos/forested_series.py``.
"""

import mpmath as mp

from tuttedelta.series import coefficient_table, mullin_coefficients, series_F
from tuttedelta.series.bruteforce import brute_force_forested
from tuttedelta.series.constants import (asymptotic_constants, coefficient_ratios,
                                         cubic_rho_formula, tetravalent_rho_closed)


def main():
    F = series_F("tetravalent", 6)
    print("Tetravalent F, coefficient of z^f as a polynomial in u:")
    for f, coeffs in coefficient_table(F, "u"):
        if not any(coeffs):
            continue
        print(f"  f={f}: {coeffs}")
    for f in (3, 4, 5):
        brute = brute_force_forested("tetravalent", f).as_expr()
        print(f"  brute force over maps with {f} faces: {brute}")

    print("\nCubic F, the same expansion in mu = u + 1 (all coefficients non-negative):")
    for f, coeffs in coefficient_table(series_F("cubic", 5), "mu"):
        if not any(coeffs):
            continue
        print(f"  f={f}: {coeffs}")

    coeffs = mullin_coefficients(4, 40)
    seq = [coeffs.get(n, 0) for n in range(41)]
    ratios = dict(coefficient_ratios(seq))
    print("\nTree-rooted tetravalent maps: consecutive ratios approach 27 from below")
    for n in (5, 10, 20, 25, 29, 39):
        print(f"  f{n + 1}/f{n} = {mp.nstr(ratios[n], 8)}")

    print("\nRadius rho_u of the tetravalent series:")
    for u in (-1, -0.5, 0, 1, 3):
        rho = asymptotic_constants("tetravalent", u).rho
        extra = f"  closed form {mp.nstr(tetravalent_rho_closed(u), 15)}" if u <= 0 else ""
        print(f"  u={u:>4}: {mp.nstr(rho, 15)}{extra}")
    print("\nCubic rho_-1 =", mp.nstr(cubic_rho_formula(-1), 20), " pi^2/384 =",
          mp.nstr(mp.pi ** 2 / 384, 20))


if __name__ == "__main__":
    main()
