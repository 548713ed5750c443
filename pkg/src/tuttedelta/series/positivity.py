"""(u + 1)-positivity: every coefficient, rewritten in powers of mu = u + 1,
has non-negative coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field

import sympy

from .core import Z, SeriesError, TruncatedSeries, mu_coefficients, u_sym
from .systems import series_F, solve_RS


@dataclass
class PositivityReport:
    label: str
    ok: bool
    checked: int
    negatives: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _by_monomial(s: TruncatedSeries) -> dict:
    """{(z exponent, t exponent): polynomial in u}."""
    out = {}
    for (a, b, c), coeff in s.coeffs().items():
        out.setdefault((a, c), 0)
        out[(a, c)] += sympy.Rational(coeff.numerator, coeff.denominator) * u_sym ** b
    return out


def mu_table(s: TruncatedSeries) -> dict:
    """{(z exponent, t exponent): [mu^0, mu^1, ...] coefficients}."""
    return {key: mu_coefficients(sympy.Poly(p, u_sym)) for key, p in sorted(_by_monomial(s).items())}


def u1_positivity(s: TruncatedSeries, label: str = "series") -> PositivityReport:
    negatives = []
    table = mu_table(s)
    for key, coeffs in table.items():
        bad = [(i, c) for i, c in enumerate(coeffs) if c < 0]
        if bad:
            negatives.append((key, bad))
    return PositivityReport(label, not negatives, len(table), negatives)


def scaled_series(preset: str, what: str, order: int, n: int = 1) -> TruncatedSeries:
    """The series whose positivity is claimed.

    ``what`` is one of ``F``, ``R-z`` ((R - b z)/u, with b = t for classes
    that keep t), ``S`` (S/u) or ``Rn`` ((R^n - (b z)^n)/u)."""
    if what == "F":
        return series_F(preset, order)
    sysm = solve_RS(preset, order)
    base = sysm.const(Z * sysm.b_elem())
    if what == "R-z":
        return (sysm.R - base).divide_monomial("u")
    if what == "S":
        return sysm.S.divide_monomial("u")
    if what == "Rn":
        if n < 1:
            raise SeriesError("n must be positive")
        return (sysm.R ** n - base ** n).divide_monomial("u")
    raise SeriesError(f"unknown series {what!r}")


def check_positivity(preset: str, what: str, order: int, n: int = 1) -> PositivityReport:
    label = f"{preset}:{what}" + (f"^{n}" if what == "Rn" else "")
    return u1_positivity(scaled_series(preset, what, order, n), label)
