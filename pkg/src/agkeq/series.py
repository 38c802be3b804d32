"""Truncated power and Laurent series in one local parameter.

Coefficients are element codes in plain lists.  A series object knows
which coefficient window is exact; products and quotients track how far
the result stays exact, so downstream code can detect when it must
re-expand at higher precision instead of silently reading junk.
"""

from .errors import DivisionByZero, PrecisionTooSmall


def ps_mul(a, b, n, field):
    """First n coefficients of the product of two power series."""
    n = min(n, len(a) + len(b) - 1) if a and b else 0
    out = [0] * n
    for i, ai in enumerate(a):
        if ai and i < n:
            for j, bj in enumerate(b):
                if bj and i + j < n:
                    out[i + j] = field.add_codes(out[i + j], field.mul_codes(ai, bj))
    return out


def ps_inv(a, n, field):
    """First n coefficients of 1/a; needs a[0] != 0."""
    if not a or a[0] == 0:
        raise DivisionByZero("series has positive valuation; cannot invert as power series")
    inv0 = field.inv_code(a[0])
    out = [inv0]
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = field.add_codes(acc, field.mul_codes(a[j], out[k - j]))
        out.append(field.neg_code(field.mul_codes(acc, inv0)))
    return out


def ps_deriv(a, field):
    """Termwise derivative; exponent factors reduce mod p."""
    return [field.mul_codes(c, field.scalar_code(k)) for k, c in enumerate(a) if k >= 1]


def ps_add(a, b, field):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [field.add_codes(x, y) for x, y in zip(a, b)]


class Laurent:
    """A Laurent series window.

    Coefficients are exact on [start, start + len(coeffs)), every
    coefficient below `start` is zero, and nothing is known above the
    window.  All constructors here preserve that convention.
    """

    __slots__ = ("field", "start", "coeffs")

    def __init__(self, field, start, coeffs):
        self.field = field
        self.start = int(start)
        self.coeffs = list(coeffs)

    @property
    def length(self):
        return len(self.coeffs)

    def valuation(self):
        """Exponent of the first nonzero coefficient, None if the
        window is identically zero (truncation hides the truth)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.start + i
        return None

    def coeff(self, e):
        i = e - self.start
        if not 0 <= i < len(self.coeffs):
            raise PrecisionTooSmall(f"coefficient {e} outside exact window")
        return self.coeffs[i]

    def shift(self, k):
        return Laurent(self.field, self.start + k, self.coeffs)

    def mul(self, other):
        n = min(self.length, other.length)
        return Laurent(
            self.field, self.start + other.start, ps_mul(self.coeffs, other.coeffs, n, self.field)
        )

    def add(self, other):
        lo = min(self.start, other.start)
        hi = min(self.start + self.length, other.start + other.length)
        if hi <= lo:
            return Laurent(self.field, lo, [])
        out = [0] * (hi - lo)
        for i in range(hi - lo):
            e = lo + i
            a = self.coeffs[e - self.start] if self.start <= e < self.start + self.length else 0
            b = (
                other.coeffs[e - other.start]
                if other.start <= e < other.start + other.length
                else 0
            )
            out[i] = self.field.add_codes(a, b)
        return Laurent(self.field, lo, out)

    def neg(self):
        return Laurent(self.field, self.start, [self.field.neg_code(c) for c in self.coeffs])

    def div(self, other):
        """Quotient window; exact length shrinks by the divisor's
        valuation offset as usual."""
        v = other.valuation()
        if v is None:
            raise DivisionByZero("divisor window is identically zero")
        unit = other.coeffs[v - other.start :]
        n = min(self.length, len(unit))
        inv = ps_inv(unit, n, self.field)
        return Laurent(self.field, self.start - v, ps_mul(self.coeffs, inv, n, self.field))

    def deriv(self):
        f = self.field
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.start + i
            out.append(f.mul_codes(c, f.scalar_code(e)))
        # d/dt t^e = e t^(e-1); the window shifts down one slot
        return Laurent(f, self.start - 1, out)

    def truncate(self, start, length):
        out = []
        for e in range(start, start + length):
            i = e - self.start
            if 0 <= i < self.length:
                out.append(self.coeffs[i])
            elif e < self.start:
                out.append(0)
            else:
                raise PrecisionTooSmall("window shorter than requested truncation")
        return Laurent(self.field, start, out)

    def __repr__(self):
        f = self.field
        terms = [
            f"{f.format_code(c)}*t^{self.start + i}" for i, c in enumerate(self.coeffs) if c
        ]
        return " + ".join(terms) if terms else f"O(t^{self.start + self.length})"
