"""Fixed-point systems for forested maps and the series F, G, H.

For a class with tables theta, phi1, phi2 the pair (R, S) solves

    R = b z + b u phi1(R, S),    S = b u phi2(R, S),

where b = t when the class keeps the edge variable and b = 1 otherwise.
F is the z-antiderivative of theta(R, S).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional

import sympy

from .core import RING, T, U, Z, SeriesError, TruncatedSeries, geometric, qq, series
from .presets import (ClassPreset, coefficient_tables, get_preset, multinomial,
                      tree_counts_closed_form, tree_counts_from_weights)


@dataclass
class System:
    preset: ClassPreset
    order: int
    t_order: int
    u: Optional[Fraction]
    route: str
    tables: dict
    R: TruncatedSeries
    S: TruncatedSeries
    iterations: int

    @property
    def main(self):
        return self.R.main

    def zero(self):
        return TruncatedSeries(RING(0), self.main, self.order)

    def const(self, poly):
        return TruncatedSeries(RING(poly), self.main, self.order)

    def u_elem(self):
        return U if self.u is None else RING(qq(self.u))

    def b_elem(self):
        return T if self.preset.keeps_t else RING(1)

    def evaluate(self, name_or_table, x=None, y=None) -> TruncatedSeries:
        table = self.tables[name_or_table] if isinstance(name_or_table, str) else name_or_table
        return evaluate_table(table, self.R if x is None else x, self.S if y is None else y)

    def tree_counts(self, max_legs: int) -> dict:
        if self.route == "table":
            return tree_counts_closed_form(self.preset, max_legs, self.t_order)
        return tree_counts_from_weights(self.preset, max_legs, self.t_order)


def _t_poly(poly: dict, keeps_t: bool):
    out = RING(0)
    for k, c in poly.items():
        out += RING(qq(c)) * (T ** k if keeps_t else 1)
    return out


def evaluate_table(table: dict, x: TruncatedSeries, y: TruncatedSeries, keeps_t: bool = True):
    """sum of c(t) x^i y^j over the table, truncated."""
    out = TruncatedSeries(RING(0), x.main, min(x.order, y.order))
    if not table:
        return out
    max_i = max(i for i, _ in table)
    max_j = max(j for _, j in table)
    xp = [x._wrap(RING(1))]
    for _ in range(max_i):
        nxt = xp[-1] * x
        xp.append(nxt)
    yp = [y._wrap(RING(1))]
    for _ in range(max_j):
        yp.append(yp[-1] * y)
    for (i, j), poly in table.items():
        if xp[i].is_zero() or yp[j].is_zero():
            continue
        c = _t_poly(poly, True)
        if not c:
            continue
        out = out + (xp[i] * yp[j]) * c
    return out


def _default_t_order(preset, order):
    # the natural bound on edges for the truncation requested
    if not preset.keeps_t:
        return 0
    if preset.main == "t":
        return order
    return 3 * order + 3


def solve_RS(preset, order: int, u=None, route: str = "table", schedule: str = "gauss-seidel",
             t_order: Optional[int] = None, max_iterations: Optional[int] = None) -> System:
    """Solve for (R, S) by fixed-point iteration until nothing changes.

    ``u`` is None for a symbolic u or a rational number.  ``schedule`` is
    ``"gauss-seidel"`` (S uses the fresh R) or ``"jacobi"``.
    """
    if isinstance(preset, str):
        preset = get_preset(preset)
    if preset.name == "cycle":
        raise SeriesError("the cycle class has no (R, S) system", "unsupported")
    t_order = _default_t_order(preset, order) if t_order is None else t_order
    tables = coefficient_tables(preset, order, t_order, route)
    main = preset.main
    U_ = U if u is None else RING(qq(u))
    B = T if preset.keeps_t else RING(1)
    base = TruncatedSeries(B * Z, main, order)
    R = base
    S = TruncatedSeries(RING(0), main, order)
    cap = max_iterations or 6 * (order + 2) + 20
    for it in range(1, cap + 1):
        R_new = base + evaluate_table(tables["phi1"], R, S) * (B * U_)
        S_src = R_new if schedule == "gauss-seidel" else R
        S_new = evaluate_table(tables["phi2"], S_src, S) * (B * U_) if tables["phi2"] else S
        if R_new == R and S_new == S:
            return System(preset, order, t_order, None if u is None else Fraction(u), route,
                          tables, R, S, it)
        R, S = R_new, S_new
    raise SeriesError("fixed-point iteration did not converge", "no_convergence")


def series_F(preset, order: int, u=None, route: str = "table", system: Optional[System] = None):
    """F with F(0) = 0 and dF/dz = theta(R, S); the cycle class returns its closed form."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    if preset.name == "cycle":
        return cycle_series(order, u)
    sysm = system or solve_RS(preset, order, u, route)
    F = sysm.evaluate("theta").integrate("z")
    return F.truncate(order)


def cycle_series(order: int, u=None) -> TruncatedSeries:
    """t / ((1 - t)(1 - (1 + u) t)) in powers of t."""
    U_ = U if u is None else RING(qq(u))
    one = TruncatedSeries(RING(1), "t", order)
    a = geometric(one * T)
    b = geometric(one * ((U_ + 1) * T))
    return (a * b * T).truncate(order)


def _sum_A(sysm: System, max_i: int):
    """sum over i >= 2, j >= 0 of T_{2i+j-1} multinom(2i+j-2; i, i-2, j) R^i S^j."""
    return _tree_sum(sysm, max_i, shift=1, lower=2)


def _sum_B(sysm: System, max_i: int):
    """sum over i >= 3, j >= 0 of T_{2i+j-2} multinom(2i+j-3; i, i-3, j) R^i S^j."""
    return _tree_sum(sysm, max_i, shift=2, lower=3)


def _tree_sum(sysm, max_i, shift, lower):
    keeps_t = sysm.preset.keeps_t
    counts = sysm.tree_counts(2 * max_i + 2)
    table = {}
    for i in range(lower, max_i + 1):
        for j in range(0, max_i + 1 - i):
            if not sysm.preset.has_S and j:
                continue
            legs = 2 * i + j - shift
            m = multinomial(legs - 1, i, i - lower, j)
            for a, c in counts.get(legs, {}).items():
                if keeps_t and a > sysm.t_order:
                    continue
                k = a if keeps_t else 0
                table.setdefault((i, j), {})
                table[(i, j)][k] = table[(i, j)].get(k, 0) + c * m
    return evaluate_table(table, sysm.R, sysm.S)


def series_G(preset, order: int, u=None, route: str = "table", system: Optional[System] = None):
    """Leaf-rooted forested maps: G = (1 + u) (z b phi2(R, S) - sum_A).

    This is (1 + 1/u)(z S - u sum_A) with S/u = b phi2(R, S) to avoid
    dividing by u.  Its z-derivative is (1 + 1/u) S."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    if not preset.has_S:
        raise SeriesError("leaf-rooted maps need a class with odd degrees", "unsupported")
    sysm = system or solve_RS(preset, order, u, route)
    B = sysm.b_elem()
    phi2 = sysm.evaluate("phi2")
    zser = sysm.const(Z)
    return ((zser * phi2 * B - _sum_A(sysm, order)) * (sysm.u_elem() + 1)).truncate(order)


def series_H(preset, order: int, u=None, route: str = "table", system: Optional[System] = None):
    """Forested maps whose root edge is outside the forest.

    Uses z phi1 + z b u phi2^2 - (2/b) S sum_A - (1/b) sum_B, which is the
    closed expression with every division by u carried out."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    sysm = system or solve_RS(preset, order, u, route)
    zser = sysm.const(Z)
    phi1 = sysm.evaluate("phi1")
    out = zser * phi1
    if preset.has_S:
        phi2 = sysm.evaluate("phi2")
        out = out + zser * phi2 * phi2 * (sysm.b_elem() * sysm.u_elem())
    tail = _sum_B(sysm, order)
    if preset.has_S:
        tail = tail + sysm.S * _sum_A(sysm, order) * 2
    if preset.keeps_t:
        tail = tail.divide_monomial("t")
    return (out - tail).truncate(order)


def series_H_by_derivative(preset, order: int, u=None, route: str = "table",
                           system: Optional[System] = None):
    """Eulerian shortcut: dH/dz = 2 (R - b z)/(u b) = 2 phi(R)."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    if preset.has_S:
        raise SeriesError("the derivative shortcut holds for Eulerian classes only", "unsupported")
    sysm = system or solve_RS(preset, order, u, route)
    return (sysm.evaluate("phi1") * 2).integrate("z").truncate(order)


# ---------------------------------------------------------------------------
# checks


@dataclass
class Report:
    ok: bool
    checked: int
    failures: list

    def __bool__(self):
        return self.ok


def check_double_count(F: TruncatedSeries, H: TruncatedSeries, preset) -> Report:
    """a H_{f,k,a} = (f + k - 1) F_{f,k,a} at every computed coefficient."""
    if isinstance(preset, str):
        preset = get_preset(preset)
    n = min(F.order, H.order)
    keys = set(F.coeffs()) | set(H.coeffs())
    fc, hc = F.coeffs(), H.coeffs()
    failures, checked = [], 0
    idx = 0 if F.main == "z" else 2
    for key in sorted(keys):
        if key[idx] > n:
            continue
        f, k, a = key
        if not preset.keeps_t:
            a = preset.edges_for_faces(f)
            if a is None:
                failures.append((key, "no edge count for this face count"))
                continue
        checked += 1
        if a * hc.get(key, 0) != (f + k - 1) * fc.get(key, 0):
            failures.append((key, hc.get(key, 0), fc.get(key, 0)))
    return Report(not failures, checked, failures)


def mullin_coefficients(p: int, max_faces: int) -> dict:
    """Faces -> number of rooted p-regular planar maps with a spanning tree."""
    out = {}
    for k in range(1, 4 * max_faces + 4):
        if p % 2 and k % 2:
            continue
        if (p - 2) * k % 2:
            continue
        h = (p - 2) * k // 2
        f = 2 + h
        if f > max_faces:
            break
        out[f] = Fraction(p * factorial((p - 1) * k),
                          factorial(k - 1) * factorial(1 + h) * factorial(2 + h))
    return out


def check_mullin(preset, order: int) -> Report:
    if isinstance(preset, str):
        preset = get_preset(preset)
    F0 = series_F(preset, order, u=0)
    target = mullin_coefficients(preset.regular, order)
    failures = []
    for f in range(order + 1):
        got = F0.coefficient(z=f)
        want = target.get(f, 0)
        if sympy.Rational(want) != got:
            failures.append((f, got, want))
    return Report(not failures, order + 1, failures)


def _substitute_4euler(S4: TruncatedSeries, order: int, U_, one, tA, Bz):
    """sum c z^f u^k t^a  ->  sum c z^f u^k (t/(1-t))^a / (1 - t(1+u))^(f+k)."""
    powA, powB = {0: one}, {0: one}

    def pw(cache, base, e):
        while max(cache) < e:
            m = max(cache)
            cache[m + 1] = cache[m] * base
        return cache[e]

    total = one * 0
    for (f, k, a), c in S4.coeffs().items():
        if a > order:
            continue
        term = pw(powA, tA, a) * pw(powB, Bz, f + k)
        weight = RING(qq(c)) * Z ** f * (U_ ** k if k else 1)
        total = total + term * weight
    return total


def eulerian_4euler_check(order: int, u=None, form: str = "rooted-chain") -> Report:
    """Compare the Eulerian F with the 4-Eulerian series after the affine change
    z -> z/(1-t(1+u)), u -> u/(1-t(1+u)), t -> t/(1-t), in powers of t.

    ``form="rooted-chain"`` treats the chain that carries the root separately:
    the root of an Eulerian map may sit on a degree 2 vertex, so the chain
    replacing the root edge of the 4-Eulerian map is counted with a marked
    position.  Splitting the 4-Eulerian maps by whether the root edge is in
    the forest (F4 - H4) or not (H4) gives

        F = cycles + [(1 - t(1+u)) (F4 - H4)* + (1 - t^2 (1+u)) H4*] / (1 - t)

    where * is the affine change.  ``form="single"`` checks the one-term
    version F = cycles + F4*, which the brute-force counts refute from t^3 on.
    """
    if form not in ("rooted-chain", "single"):
        raise SeriesError(f"unknown form {form!r}")
    FE = series_F("eulerian", order, u)
    U_ = U if u is None else RING(qq(u))
    one = TruncatedSeries(RING(1), "t", order)
    A = geometric(one * T)                       # 1/(1 - t)
    Bz = geometric(one * ((U_ + 1) * T))         # 1/(1 - t(1+u))
    tA = A * T
    sys4 = solve_RS("4-eulerian", order + 2, u)
    F4 = series_F("4-eulerian", order + 2, u, system=sys4)
    F4s = _substitute_4euler(F4, order, U_, one, tA, Bz)
    if form == "single":
        total = F4s
    else:
        H4 = series_H("4-eulerian", order + 2, u, system=sys4)
        H4s = _substitute_4euler(H4, order, U_, one, tA, Bz)
        inner = (F4s - H4s) * (1 - (U_ + 1) * T) + H4s * (1 - (U_ + 1) * T ** 2)
        total = inner * A
    total = total + A * Bz * (Z ** 2 * T)
    diff = (FE - total).truncate(order)
    failures = [] if diff.is_zero() else [str(diff.as_expr())]
    return Report(not failures, order, failures)


def check_schedules(preset, order: int, u=None) -> Report:
    a = solve_RS(preset, order, u, schedule="gauss-seidel")
    b = solve_RS(preset, order, u, schedule="jacobi")
    ok = a.R == b.R and a.S == b.S
    return Report(ok, 2, [] if ok else ["schedules disagree"])


def check_routes(preset, order: int, u=None) -> Report:
    a = series_F(preset, order, u, route="table")
    b = series_F(preset, order, u, route="weights")
    ok = a == b
    return Report(ok, 1, [] if ok else ["table and weights routes disagree"])
