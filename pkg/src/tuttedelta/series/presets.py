"""Map classes and the coefficient tables of their theta / phi series.

Every preset can produce its tables two ways:

* ``route="table"`` uses closed-form coefficients written out per class;
* ``route="weights"`` derives them from the tree series of
  :mod:`tuttedelta.series.legged` and multinomial coefficients.

The two routes are compared in the test suite, which is how the
hand-written formulas are checked.

A table is a dict ``{(i, j): {k: c}}`` meaning the term c t^k x^i y^j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Optional

from .core import SeriesError
from .legged import (eulerian_tree_count, four_eulerian_tree_count, legged_trees,
                     regular_tree_count)


def multinomial(n: int, *parts: int) -> int:
    if any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def _f(n):
    return factorial(n) if n >= 0 else None


@dataclass(frozen=True)
class ClassPreset:
    name: str
    main: str                      # variable the series is truncated in
    keeps_t: bool                  # whether t appears in the system
    weights: Callable              # degree -> weight
    regular: Optional[int] = None  # p for p-regular classes
    has_S: bool = True
    aliases: tuple = field(default_factory=tuple)

    @property
    def eulerian(self) -> bool:
        return not self.has_S

    def edges_for_faces(self, f: int) -> Optional[int]:
        """Edge count forced by the face count (regular classes only)."""
        p = self.regular
        if p is None or p < 3:
            return None
        num = p * (f - 2)
        return num // (p - 2) if num % (p - 2) == 0 else None

    def weight_dict(self, max_degree: int) -> dict:
        return {k: self.weights(k) for k in range(1, max_degree + 1) if self.weights(k)}


def _regular(p):
    return lambda k: 1 if k == p else 0


PRESETS = {
    "cubic": ClassPreset("cubic", "z", False, _regular(3), regular=3),
    "tetravalent": ClassPreset("tetravalent", "z", False, _regular(4), regular=4, has_S=False,
                               aliases=("quartic", "4-regular")),
    "eulerian": ClassPreset("eulerian", "t", True, lambda k: 1 if k % 2 == 0 else 0, has_S=False),
    "4-eulerian": ClassPreset("4-eulerian", "z", True,
                              lambda k: 1 if k % 2 == 0 and k >= 4 else 0, has_S=False),
    "cycle": ClassPreset("cycle", "t", True, _regular(2), regular=2, has_S=False),
}


def get_preset(name: str) -> ClassPreset:
    """Look a class up by name; ``2q-regular`` style names build on demand."""
    key = name.lower()
    for p in PRESETS.values():
        if key == p.name or key in p.aliases:
            return p
    if key.endswith("-regular"):
        try:
            p = int(key.split("-")[0])
        except ValueError:
            p = None
        if p == 3:
            return PRESETS["cubic"]
        if p == 4:
            return PRESETS["tetravalent"]
        if p is not None and p >= 6 and p % 2 == 0:
            return ClassPreset(f"{p}-regular", "z", False, _regular(p), regular=p, has_S=False)
        raise SeriesError(f"unsupported regular class {name!r}; odd degrees other than 3 "
                          "are not supported", "unknown_preset")
    raise SeriesError(f"unknown preset {name!r}", "unknown_preset")


# ---------------------------------------------------------------------------
# closed-form tables


def _put(table, i, j, k, c):
    if c:
        table.setdefault((i, j), {})[k] = table.get((i, j), {}).get(k, 0) + Fraction(c)


def table_closed_form(preset: ClassPreset, order: int, t_order: int = 0) -> dict:
    """theta, phi1, phi2 (and the tree counts T_l) from the class formulas."""
    theta, phi1, phi2 = {}, {}, {}
    name, p = preset.name, preset.regular
    if name == "tetravalent":
        for i in range(2, order + 1):
            _put(theta, i, 0, 0, Fraction(4 * _f(3 * i - 3), _f(i) ** 2 * _f(i - 2)))
            _put(phi1, i, 0, 0, Fraction(_f(3 * i - 3), _f(i) * _f(i - 1) ** 2))
    elif p is not None and p >= 6:
        q = p // 2
        for k in range(1, order + 1):
            e = (q - 1) * k + 1
            if e > order:
                break
            _put(theta, e, 0, 0, Fraction(2 * q * _f((2 * q - 1) * k),
                                           _f(k - 1) * _f((q - 1) * k + 1) ** 2))
            _put(phi1, e, 0, 0, Fraction(_f((2 * q - 1) * k),
                                          _f(k) * _f((q - 1) * k) * _f((q - 1) * k + 1)))
    elif name == "cubic":
        for i in range(0, order + 1):
            for j in range(0, order + 1 - i):
                s = 2 * i + j
                if s >= 3:
                    _put(theta, i, j, 0, Fraction(3 * _f(4 * i + 2 * j - 4),
                                                  _f(i) ** 2 * _f(j) * _f(s - 3)))
                if s >= 3 and i >= 1:
                    _put(phi1, i, j, 0, Fraction(_f(4 * i + 2 * j - 4),
                                                 _f(i) * _f(i - 1) * _f(j) * _f(s - 2)))
                if s >= 2:
                    _put(phi2, i, j, 0, Fraction(_f(4 * i + 2 * j - 2),
                                                 _f(i) ** 2 * _f(j) * _f(s - 1)))
    elif name == "eulerian":
        for i in range(1, order + 1):
            for k in range(0, t_order + 1):
                _put(theta, i, 0, k, Fraction(2 * _f(2 * i + k - 1) * _f(i + k),
                                              _f(i) ** 2 * _f(i - 1) * _f(k) * _f(k + 1)))
                _put(phi1, i, 0, k, Fraction(_f(2 * i + k - 1) * _f(i + k - 1),
                                             _f(i) * _f(i - 1) ** 2 * _f(k) * _f(k + 1)))
    elif name == "4-eulerian":
        for i in range(2, order + 1):
            for k in range(0, min(i - 2, t_order) + 1):
                _put(theta, i, 0, k, Fraction(2 * (i + k) * _f(2 * i + k - 1) * _f(i - 2),
                                              _f(i) ** 2 * _f(i - k - 2) * _f(k) * _f(k + 1)))
                _put(phi1, i, 0, k, Fraction(_f(2 * i + k - 1) * _f(i - 2),
                                             _f(i) * _f(i - 1) * _f(i - k - 2) * _f(k) * _f(k + 1)))
    else:
        raise SeriesError(f"no closed-form table for {name!r}", "unknown_preset")
    return {"theta": theta, "phi1": phi1, "phi2": phi2}


def tree_counts_closed_form(preset: ClassPreset, max_legs: int, t_order: int) -> dict:
    """{legs: {edges: count}} from the closed-form tree counts."""
    out = {}
    for legs in range(1, max_legs + 1):
        if preset.regular is not None and preset.regular >= 3:
            e, c = regular_tree_count(preset.regular, legs)
            out[legs] = {e: c} if c else {}
        elif preset.name in ("eulerian", "4-eulerian"):
            count = eulerian_tree_count if preset.name == "eulerian" else four_eulerian_tree_count
            out[legs] = {} if legs % 2 else {
                j: count(legs // 2, j) for j in range(t_order + 1) if count(legs // 2, j)}
        else:
            raise SeriesError(f"no closed-form tree counts for {preset.name!r}")
    return out


# ---------------------------------------------------------------------------
# tables from the tree series


def tree_counts_from_weights(preset: ClassPreset, max_legs: int, t_order: int) -> dict:
    t_cap = max(t_order, max_legs) if not preset.keeps_t else t_order
    trees = legged_trees(preset.weights, t_cap, max_legs)
    return {legs: trees.count(legs) for legs in range(1, max_legs + 1)}


def table_from_weights(preset: ClassPreset, order: int, t_order: int = 0) -> dict:
    """theta, phi1, phi2 built from tree counts and multinomials.

    Classes that drop t are evaluated at t = 1 (every T_l is then a
    single monomial)."""
    max_legs = 2 * order + 2
    counts = tree_counts_from_weights(preset, max_legs, t_order)

    def corner(legs):
        return {a: c * (Fraction(2 * a, legs) + 1) for a, c in counts.get(legs, {}).items()}

    def add(table, i, j, poly, factor):
        if not factor:
            return
        for a, c in poly.items():
            k = a if preset.keeps_t else 0
            if preset.keeps_t and a > t_order:
                continue
            _put(table, i, j, k, c * factor)

    theta, phi1, phi2 = {}, {}, {}
    for i in range(0, order + 1):
        for j in range(0, order + 1 - i):
            if not preset.has_S and j:
                continue
            s = 2 * i + j
            if s >= 1:
                add(theta, i, j, corner(s), multinomial(s, i, i, j))
            if i >= 1:
                add(phi1, i, j, counts.get(s, {}), multinomial(s - 1, i - 1, i, j))
            add(phi2, i, j, counts.get(s + 1, {}), multinomial(s, i, i, j))
    if not preset.has_S:
        phi2 = {}
    return {"theta": theta, "phi1": phi1, "phi2": phi2}


def coefficient_tables(preset: ClassPreset, order: int, t_order: int = 0, route: str = "table") -> dict:
    if route == "table":
        return table_closed_form(preset, order, t_order)
    if route == "weights":
        return table_from_weights(preset, order, t_order)
    raise SeriesError(f"unknown route {route!r}")


def tables_equal(a: dict, b: dict) -> bool:
    def clean(t):
        return {key: {k: c for k, c in poly.items() if c} for key, poly in t.items()
                if any(poly.values())}
    return all(clean(a[n]) == clean(b[n]) for n in ("theta", "phi1", "phi2"))
