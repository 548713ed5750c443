"""Exact integer polynomials in x and y."""

from __future__ import annotations

import json
from typing import Dict, Tuple


class BivariatePolynomial:
    """Finite map (i, j) -> nonzero int, read as sum c * x**i * y**j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: Dict[Tuple[int, int], int] = {}
        for k, c in dict(terms or {}).items():
            c = int(c)
            if c:
                clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean

    @classmethod
    def const(cls, c: int) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "BivariatePolynomial":
        return cls({(i, j): c})

    X = None  # filled in below
    Y = None

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        out: Dict[Tuple[int, int], int] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = BivariatePolynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivariatePolynomial.const(other)
        return isinstance(other, BivariatePolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __call__(self, x, y):
        return sum(c * x ** i * y ** j for (i, j), c in self.terms.items())

    def swap(self) -> "BivariatePolynomial":
        """Exchange the roles of x and y."""
        return BivariatePolynomial({(j, i): c for (i, j), c in self.terms.items()})

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def coefficient(self, i: int, j: int) -> int:
        return self.terms.get((i, j), 0)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def to_json(self) -> str:
        return json.dumps({"terms": [{"x": i, "y": j, "c": str(c)}
                                     for (i, j), c in self.sorted_terms()]})

    @classmethod
    def from_json(cls, text: str) -> "BivariatePolynomial":
        data = json.loads(text)
        return cls({(t["x"], t["y"]): int(t["c"]) for t in data["terms"]})

    def __repr__(self):
        return f"BivariatePolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "*".join(p for p in (_pw("x", i), _pw("y", j)) if p)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _pw(v, k):
    if k == 0:
        return ""
    return v if k == 1 else f"{v}^{k}"


def _lift(p):
    if isinstance(p, BivariatePolynomial):
        return p
    if isinstance(p, int):
        return BivariatePolynomial.const(p)
    raise TypeError(f"cannot combine polynomial with {type(p).__name__}")


BivariatePolynomial.X = BivariatePolynomial.monomial(1, 0)
BivariatePolynomial.Y = BivariatePolynomial.monomial(0, 1)
X = BivariatePolynomial.X
Y = BivariatePolynomial.Y


def parse_polynomial(text: str) -> BivariatePolynomial:
    """Read a polynomial such as ``x^2 + x + x*y + y + y^2`` (integer coefficients)."""
    import sympy

    x, y = sympy.symbols("x y")
    expr = sympy.sympify(text.replace("^", "**"), locals={"x": x, "y": y})
    poly = sympy.Poly(sympy.expand(expr), x, y)
    return BivariatePolynomial({m: int(c) for m, c in poly.terms()})
