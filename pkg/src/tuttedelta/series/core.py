"""Truncated power series in z, u, t with exact rational coefficients.

Series live in the polynomial ring QQ[z, u, t].  One of z or t is the
*main* variable; every operation drops monomials whose main exponent
exceeds the order.  u is kept symbolic unless a numeric value is
substituted on purpose.
"""

from __future__ import annotations

from fractions import Fraction

import sympy
from sympy.polys.domains import QQ
from sympy.polys.rings import ring

RING, Z, U, T = ring("z,u,t", QQ)
GENS = {"z": 0, "u": 1, "t": 2}
z_sym, u_sym, t_sym = sympy.symbols("z u t")
mu_sym = sympy.Symbol("mu")


class SeriesError(ValueError):
    def __init__(self, message, code="series"):
        super().__init__(message)
        self.code = code


def qq(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, sympy.Rational):
        return QQ(int(x.p), int(x.q))
    return QQ(x)


class TruncatedSeries:
    """A polynomial in (z, u, t) standing for a series known through ``order``
    in its main variable."""

    __slots__ = ("poly", "main", "order")

    def __init__(self, poly, main: str = "z", order: int = 10):
        if main not in ("z", "t"):
            raise SeriesError(f"main variable must be z or t, not {main!r}")
        self.main = main
        self.order = order
        self.poly = _truncate(RING(poly), GENS[main], order)

    # -- construction -----------------------------------------------------
    @classmethod
    def like(cls, other, poly):
        return cls(poly, other.main, other.order)

    def _wrap(self, poly, order=None):
        s = TruncatedSeries.__new__(TruncatedSeries)
        s.main, s.order = self.main, self.order if order is None else order
        s.poly = poly
        return s

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.main != self.main:
                raise SeriesError("series have different main variables")
            return other.poly, min(self.order, other.order)
        return RING(qq(other) if isinstance(other, (int, Fraction, sympy.Rational)) else other), self.order

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        p, n = self._coerce(other)
        return self._wrap(_truncate(self.poly + p, GENS[self.main], n), n)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.poly)

    def __sub__(self, other):
        p, n = self._coerce(other)
        return self._wrap(_truncate(self.poly - p, GENS[self.main], n), n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p, n = self._coerce(other)
        return self._wrap(mul_trunc(self.poly, p, GENS[self.main], n), n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise SeriesError("negative powers are not supported")
        out = self._wrap(RING(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        i = GENS[self.main]
        return _truncate(self.poly - other.poly, i, n) == 0

    def __hash__(self):
        return hash((self.main, self.order, tuple(sorted(self.poly.items()))))

    def __repr__(self):
        return f"TruncatedSeries({self.as_expr()} + O({self.main}^{self.order + 1}))"

    # -- calculus -------------------------------------------------------------
    def diff(self, var: str = "z"):
        i = GENS[var]
        out = {}
        for m, c in self.poly.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                out[tuple(m2)] = c * m[i]
        order = self.order - 1 if var == self.main else self.order
        return self._wrap(RING.from_dict(out) if out else RING(0), order)

    def integrate(self, var: str = "z"):
        """Antiderivative vanishing at var = 0."""
        i = GENS[var]
        out = {}
        for m, c in self.poly.items():
            m2 = list(m)
            m2[i] += 1
            out[tuple(m2)] = c / QQ(m2[i])
        order = self.order + 1 if var == self.main else self.order
        return self._wrap(RING.from_dict(out) if out else RING(0), order)

    def divide_monomial(self, var: str, k: int = 1):
        """Exact division by var**k; raises if some term is not divisible."""
        i = GENS[var]
        out = {}
        for m, c in self.poly.items():
            if m[i] < k:
                raise SeriesError(f"series is not divisible by {var}^{k}")
            m2 = list(m)
            m2[i] -= k
            out[tuple(m2)] = c
        order = self.order - k if var == self.main else self.order
        return self._wrap(RING.from_dict(out) if out else RING(0), order)

    def shift(self, var: str, k: int = 1):
        """Multiply by var**k."""
        i = GENS[var]
        out = {}
        for m, c in self.poly.items():
            m2 = list(m)
            m2[i] += k
            out[tuple(m2)] = c
        order = self.order + k if var == self.main else self.order
        return self._wrap(_truncate(RING.from_dict(out) if out else RING(0), GENS[self.main], order), order)

    def substitute(self, var: str, value):
        """Evaluate a non-main variable at a rational number."""
        if var == self.main:
            raise SeriesError("cannot substitute the main variable")
        i = GENS[var]
        v = qq(value)
        out = {}
        for m, c in self.poly.items():
            m2 = list(m)
            e = m2[i]
            m2[i] = 0
            key = tuple(m2)
            out[key] = out.get(key, QQ(0)) + c * v ** e
        return self._wrap(RING.from_dict({k: c for k, c in out.items() if c}) if out else RING(0))

    def truncate(self, order: int):
        return self._wrap(_truncate(self.poly, GENS[self.main], order), min(order, self.order))

    def valuation(self) -> int:
        i = GENS[self.main]
        return min((m[i] for m in self.poly.keys()), default=self.order + 1)

    # -- coefficients ---------------------------------------------------------
    def coefficient(self, **exps):
        """Coefficient of z^a u^b t^c; missing exponents mean "sum over"
        (returned as a sympy expression in the remaining variables)."""
        fixed = {GENS[k]: v for k, v in exps.items()}
        out = 0
        names = [z_sym, u_sym, t_sym]
        for m, c in self.poly.items():
            if all(m[i] == v for i, v in fixed.items()):
                term = sympy.Rational(int(c.numerator), int(c.denominator))
                for i, e in enumerate(m):
                    if i not in fixed and e:
                        term *= names[i] ** e
                out += term
        return sympy.expand(out)

    def coeffs(self) -> dict:
        """{(a, b, c): Fraction} for z^a u^b t^c."""
        return {m: Fraction(int(c.numerator), int(c.denominator)) for m, c in self.poly.items()}

    def u_polynomial(self, main_exp: int, **other) -> sympy.Poly:
        """Coefficient of main^k (and any fixed other variable) as a polynomial in u."""
        expr = self.coefficient(**{self.main: main_exp}, **other)
        return sympy.Poly(expr, u_sym) if expr != 0 else sympy.Poly(0, u_sym)

    def as_expr(self):
        return self.poly.as_expr(z_sym, u_sym, t_sym)

    def is_zero(self) -> bool:
        return self.poly == 0


def _truncate(p, i, n):
    if all(m[i] <= n for m in p.keys()):
        return p
    return RING.from_dict({m: c for m, c in p.items() if m[i] <= n}) if p else p


def mul_trunc(p, q, i, n):
    """Product of two ring elements, dropping main exponents above n."""
    if not p or not q:
        return RING(0)
    out = {}
    qi = sorted(q.items(), key=lambda kv: kv[0][i])
    get = out.get
    for ma, ca in p.items():
        room = n - ma[i]
        if room < 0:
            continue
        for mb, cb in qi:
            if mb[i] > room:
                break
            key = (ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2])
            out[key] = get(key, 0) + ca * cb
    out = {k: v for k, v in out.items() if v}
    return RING.from_dict(out) if out else RING(0)


def series(expr, main="z", order=10) -> TruncatedSeries:
    """Build a series from a sympy expression or string (polynomial in z, u, t)."""
    if isinstance(expr, str):
        expr = sympy.sympify(expr, locals={"z": z_sym, "u": u_sym, "t": t_sym})
    poly = RING.from_expr(sympy.expand(expr)) if expr != 0 else RING(0)
    return TruncatedSeries(poly, main, order)


def geometric(x: TruncatedSeries) -> TruncatedSeries:
    """1 / (1 - x) for a series of positive valuation."""
    if x.valuation() < 1:
        raise SeriesError("geometric series needs positive valuation")
    out = x._wrap(RING(1))
    term = out
    for _ in range(x.order):
        term = term * x
        if term.is_zero():
            break
        out = out + term
    return out


def inverse_linear(a, x: TruncatedSeries) -> TruncatedSeries:
    """1 / (1 - a x) where a is a ring element and x has positive valuation."""
    return geometric(x * x._wrap(RING(a)))


# ---------------------------------------------------------------------------
# polynomials in u and the mu = u + 1 basis


def to_mu(poly_u) -> sympy.Poly:
    """Rewrite a polynomial in u in powers of mu = u + 1."""
    expr = poly_u.as_expr() if isinstance(poly_u, sympy.Poly) else sympy.sympify(poly_u)
    return sympy.Poly(sympy.expand(expr.subs(u_sym, mu_sym - 1)), mu_sym)


def mu_coefficients(poly_u) -> list:
    """Coefficients of 1, mu, mu^2, ... (lowest first)."""
    p = to_mu(poly_u)
    return list(reversed(p.all_coeffs())) if not p.is_zero else [0]


def format_fraction(x) -> str:
    x = sympy.Rational(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


def coefficient_table(s: TruncatedSeries, basis: str = "u", start: int = 0) -> list:
    """Rows (exponent, [coefficients of basis^0, basis^1, ...]) for each power
    of the main variable, other variables summed over.  ``basis`` is u or mu."""
    rows = []
    for k in range(start, s.order + 1):
        p = s.u_polynomial(k)
        coeffs = mu_coefficients(p) if basis == "mu" else (list(reversed(p.all_coeffs())) if not p.is_zero else [0])
        rows.append((k, [sympy.Rational(c) for c in coeffs]))
    return rows
