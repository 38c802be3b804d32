"""Homogeneous forms in X, Y, Z over a finite field.

Coefficients are stored sparsely by exponent triple.  The monomial
order used for dense coefficient vectors is fixed once here and shared
by everything that linearizes forms.
"""

import re
from functools import lru_cache

import numpy as np

from .errors import FieldError, NotHomogeneous
from .linalg import code_dtype


@lru_cache(maxsize=None)
def monomials(degree):
    """Canonical ordering of exponent triples of the given total degree."""
    return tuple(
        (i, j, degree - i - j) for i in range(degree, -1, -1) for j in range(degree - i, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(degree):
    return {t: k for k, t in enumerate(monomials(degree))}


class Form:
    """A homogeneous trivariate polynomial with code coefficients."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, degree, coeffs):
        self.field = field
        self.degree = int(degree)
        clean = {}
        for (i, j, k), c in coeffs.items():
            c = field.element(c).code if not isinstance(c, int) else c
            if c == 0:
                continue
            if i < 0 or j < 0 or k < 0 or i + j + k != self.degree:
                raise NotHomogeneous(f"exponent {(i, j, k)} not of degree {self.degree}")
            clean[(i, j, k)] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, field, value=1):
        return cls(field, 0, {(0, 0, 0): field.element(value).code})

    @classmethod
    def variable(cls, field, name):
        e = {"X": (1, 0, 0), "Y": (0, 1, 0), "Z": (0, 0, 1)}[name.upper()]
        return cls(field, 1, {e: 1})

    @classmethod
    def line(cls, field, a, b, c):
        cs = [field.element(v).code for v in (a, b, c)]
        if not any(cs):
            raise FieldError("zero line")
        return cls(field, 1, {(1, 0, 0): cs[0], (0, 1, 0): cs[1], (0, 0, 1): cs[2]})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise NotHomogeneous("adding forms of different degrees")
        deg = self.degree if self.coeffs or not other.coeffs else other.degree
        out = dict(self.coeffs)
        f = self.field
        for e, c in other.coeffs.items():
            out[e] = f.add_codes(out.get(e, 0), c)
        return Form(f, deg, out)

    def scaled(self, c):
        c = self.field.element(c).code
        return Form(
            self.field, self.degree, {e: self.field.mul_codes(v, c) for e, v in self.coeffs.items()}
        )

    def __mul__(self, other):
        f = self.field
        out = {}
        for (i1, j1, k1), c1 in self.coeffs.items():
            for (i2, j2, k2), c2 in other.coeffs.items():
                e = (i1 + i2, j1 + j2, k1 + k2)
                out[e] = f.add_codes(out.get(e, 0), f.mul_codes(c1, c2))
        return Form(f, self.degree + other.degree, out)

    def __pow__(self, n):
        out = Form.constant(self.field)
        for _ in range(int(n)):
            out = out * self
        return out

    def partial(self, var):
        """Formal partial derivative with respect to X, Y, or Z."""
        pos = {"X": 0, "Y": 1, "Z": 2}[var.upper()]
        f = self.field
        out = {}
        for e, c in self.coeffs.items():
            if e[pos] == 0:
                continue
            s = f.scalar_code(e[pos])
            if s == 0:
                continue
            ne = list(e)
            ne[pos] -= 1
            out[tuple(ne)] = f.add_codes(out.get(tuple(ne), 0), f.mul_codes(c, s))
        return Form(f, max(self.degree - 1, 0), out)

    def eval_codes(self, x, y, z):
        f = self.field
        acc = 0
        for (i, j, k), c in self.coeffs.items():
            term = f.mul_codes(f.mul_codes(f.pow_code(x, i), f.pow_code(y, j)), f.pow_code(z, k))
            acc = f.add_codes(acc, f.mul_codes(c, term))
        return acc

    def __call__(self, x, y, z):
        f = self.field
        return f.element(
            self.eval_codes(f.element(x).code, f.element(y).code, f.element(z).code)
        )

    def coeff_vector(self):
        """Dense coefficients over monomials(self.degree)."""
        idx = monomial_index(self.degree)
        out = np.zeros(len(idx), dtype=code_dtype(self.field))
        for e, c in self.coeffs.items():
            out[idx[e]] = c
        return out

    @classmethod
    def from_coeff_vector(cls, field, degree, vec):
        mons = monomials(degree)
        return cls(field, degree, {mons[i]: int(c) for i, c in enumerate(vec) if c})

    def chart_poly(self, chart):
        """Dehomogenize: dict {(eu, ev): code} in the chart's two
        affine coordinates; chart "z" keeps (x, y), "y" keeps (x, z),
        "x" keeps (y, z)."""
        take = {"z": (0, 1), "y": (0, 2), "x": (1, 2)}[chart]
        out = {}
        f = self.field
        for e, c in self.coeffs.items():
            key = (e[take[0]], e[take[1]])
            out[key] = f.add_codes(out.get(key, 0), c)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and self.field == other.field
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = ("X", "Y", "Z")
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            factors = []
            if c != 1 or not any(e):
                factors.append(self.field.format_code(c))
            for n, p in zip(names, e):
                if p == 1:
                    factors.append(n)
                elif p > 1:
                    factors.append(f"{n}^{p}")
            parts.append("*".join(factors))
        return " + ".join(parts)


_TOKEN = re.compile(r"\s*([XYZxyz])(?:\^(\d+))?\s*")


def parse_form(field, text):
    """Parse strings like "X^3*Y + Y^3*Z + Z^3*X" or "a^2*X*Z + Y^2"."""
    text = text.strip()
    if not text:
        raise NotHomogeneous("empty form string")
    degree = None
    out = {}
    for chunk, sign in _signed_terms(text):
        coeff = field.one.code
        expo = [0, 0, 0]
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise NotHomogeneous(f"bad factor in {chunk!r}")
            m = _TOKEN.fullmatch(factor)
            if m:
                var = m.group(1).upper()
                p = int(m.group(2) or 1)
                expo["XYZ".index(var)] += p
            else:
                coeff = field.mul_codes(coeff, field.parse_code(factor))
        if sign < 0:
            coeff = field.neg_code(coeff)
        d = sum(expo)
        if degree is None:
            degree = d
        elif d != degree:
            raise NotHomogeneous(f"mixed degrees {degree} and {d} in {text!r}")
        e = tuple(expo)
        out[e] = field.add_codes(out.get(e, 0), coeff)
    return Form(field, degree or 0, out)


def _signed_terms(text):
    chunks = re.split(r"\s*([+-])\s*", text)
    sign = 1
    if chunks[0] == "":
        chunks = chunks[1:]
        if chunks and chunks[0] == "-":
            sign = -1
            chunks = chunks[1:]
        elif chunks and chunks[0] == "+":
            chunks = chunks[1:]
    out = [(chunks[0], sign)]
    i = 1
    while i + 1 < len(chunks) + 1 and i < len(chunks):
        op = chunks[i]
        term = chunks[i + 1] if i + 1 < len(chunks) else ""
        out.append((term, 1 if op == "+" else -1))
        i += 2
    return out
