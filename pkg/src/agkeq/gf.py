"""Finite fields GF(p^m) with elements stored as integer codes.

An element sum(c_i * x^i) mod modulus is stored as the integer
sum(c_i * p^i).  Multiplication runs on exp/log tables built over a
generator of the multiplicative group; addition is digitwise mod p
(a plain XOR when p = 2).
"""

from collections import namedtuple
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, FieldError, MixedFields, ReducibleModulus

Tables = namedtuple("Tables", ["exp", "log", "q", "p"])

_MAX_Q = 1 << 20  # table memory guard


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over GF(p); polys are tuples (c0, c1, ...) --


def _ptrim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(tuple(out))


def _pmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            f = (c * inv_lb) % p
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _ptrim(tuple(a))


def _poly_irreducible(coeffs, p):
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(coeffs) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for code in range(p**d):
            div = _decode(code, p) + (0,) * (d - len(_decode(code, p))) + (1,)
            if not _pmod(coeffs, div, p):
                return False
    return True


def _decode(code, p):
    out = []
    while code:
        out.append(code % p)
        code //= p
    return tuple(out)


def _encode(coeffs, p):
    code = 0
    for c in reversed(coeffs):
        code = code * p + (c % p)
    return code


@dataclass(frozen=True)
class FieldSpec:
    """Defining data of GF(p^m): characteristic, degree, modulus coeffs.

    `modulus` lists coefficients low to high and must be monic of
    degree m with entries reduced mod p.
    """

    p: int
    m: int
    modulus: tuple

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise FieldError("extension degree must be >= 1")
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if len(self.modulus) != self.m + 1:
            raise FieldError("modulus must have degree m")
        if self.modulus[-1] != 1:
            raise FieldError("modulus must be monic")
        if any(not (0 <= c < self.p) for c in self.modulus):
            raise FieldError("modulus coefficients must be reduced mod p")
        if self.p**self.m > _MAX_Q:
            raise FieldError(f"field size {self.p}**{self.m} exceeds table budget")

    def to_json(self):
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["p"]), int(obj["m"]), tuple(obj["modulus"]))


class Field:
    """GF(p^m) for a fixed irreducible modulus.

    Exp/log tables are indexed by a generator of the unit group: the
    class of x when it has full order (true for x^3+x+1 over GF(2),
    x^4+x+1 over GF(2), and every primitive modulus), otherwise the
    smallest-code element of order q-1.
    """

    def __init__(self, spec):
        if not isinstance(spec, FieldSpec):
            spec = FieldSpec(**spec) if isinstance(spec, dict) else FieldSpec(*spec)
        if not _poly_irreducible(spec.modulus, spec.p):
            raise ReducibleModulus(f"{list(spec.modulus)} factors over GF({spec.p})")
        self.spec = spec
        self.p = spec.p
        self.m = spec.m
        self.q = spec.p**spec.m
        self._ext_cache = {}
        self._build_tables()

    # raw polynomial product of two codes, reduced mod modulus
    def _mul_raw(self, a, b):
        prod = _pmul(_decode(a, self.p), _decode(b, self.p), self.p)
        return _encode(_pmod(prod, self.spec.modulus, self.p), self.p)

    def _order_of(self, code):
        n, acc = 1, code
        while acc != 1:
            acc = self._mul_raw(acc, code)
            n += 1
            if n > self.q:
                raise FieldError("order computation ran away")
        return n

    def _build_tables(self):
        q, p = self.q, self.p
        gen = None
        if self.m == 1:
            candidates = range(2, q) if q > 2 else [1]
        else:
            candidates = [p] + [c for c in range(2, q) if c != p]
        for c in candidates:
            if self._order_of(c) == q - 1:
                gen = c
                break
        if gen is None:
            if q == 2:
                gen = 1
            else:
                raise FieldError("no generator found (bug)")
        self.gen_code = gen
        self.alpha_is_gen = self.m > 1 and gen == p
        exp = np.zeros(max(2 * (q - 1), 1), dtype=np.uint32)
        log = np.full(q, -1, dtype=np.int64)
        acc = 1
        for i in range(q - 1):
            exp[i] = acc
            exp[i + q - 1] = acc
            log[acc] = i
            acc = self._mul_raw(acc, gen)
        if acc != 1:
            raise FieldError("generator order mismatch (bug)")
        self._exp = exp
        self._log = log
        dtype = np.uint16 if q <= 1 << 16 else np.uint32
        self._tables = Tables(exp.astype(dtype), log.copy(), q, p)

    def tables(self):
        """Numpy exp/log tables for the kernel backends."""
        return self._tables

    # -- code-level arithmetic --

    def add_codes(self, a, b):
        if self.p == 2:
            return a ^ b
        pa, pb = _decode(a, self.p), _decode(b, self.p)
        n = max(len(pa), len(pb))
        pa += (0,) * (n - len(pa))
        pb += (0,) * (n - len(pb))
        return _encode(tuple((x + y) % self.p for x, y in zip(pa, pb)), self.p)

    def neg_code(self, a):
        if self.p == 2:
            return a
        return _encode(tuple((-c) % self.p for c in _decode(a, self.p)), self.p)

    def sub_codes(self, a, b):
        return self.add_codes(a, self.neg_code(b))

    def mul_codes(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def inv_code(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])

    def div_codes(self, a, b):
        return self.mul_codes(a, self.inv_code(b))

    def pow_code(self, a, n):
        if a == 0:
            if n == 0:
                return 1
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    def scalar_code(self, n):
        """Image of the integer n under the prime-field embedding."""
        n %= self.p
        code = 0
        for _ in range(n):
            code = self.add_codes(code, 1)
        return code

    # -- element API --

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    @property
    def alpha(self):
        """The class of x mod modulus."""
        if self.m == 1:
            raise FieldError("prime field has no x class")
        return FieldElement(self, self.p)

    def element(self, value):
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise MixedFields("element from a different field")
            return value
        if isinstance(value, (int, np.integer)):
            if not 0 <= value < self.q:
                raise FieldError(f"code {value} out of range for q={self.q}")
            return FieldElement(self, int(value))
        if isinstance(value, (list, tuple)):
            if len(value) > self.m:
                raise FieldError("too many coefficients")
            return FieldElement(self, _encode(tuple(int(c) % self.p for c in value), self.p))
        if isinstance(value, str):
            return FieldElement(self, self.parse_code(value))
        raise FieldError(f"cannot build a field element from {value!r}")

    def enumerate(self):
        """All q elements: zero first, then ascending powers of the generator."""
        out = [self.zero]
        acc = 1
        for _ in range(self.q - 1):
            out.append(FieldElement(self, acc))
            acc = self.mul_codes(acc, self.gen_code)
        return out

    def random_element(self, rng, nonzero=False):
        lo = 1 if nonzero else 0
        return FieldElement(self, rng.randrange(lo, self.q))

    # -- text form: "0", "1", "a", "a^5", or a polynomial sum --

    def format_code(self, code):
        if code == 0:
            return "0"
        if code == 1:
            return "1"
        if self.m == 1:
            return str(code)
        if self.alpha_is_gen:
            k = int(self._log[code])
            return "a" if k == 1 else f"a^{k}"
        terms = []
        for i, c in reversed(list(enumerate(_decode(code, self.p)))):
            if not c:
                continue
            coef = "" if c == 1 else f"{c}*"
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{coef}a")
            else:
                terms.append(f"{coef}a^{i}")
        return "+".join(terms)

    def parse_code(self, text):
        text = text.strip().replace(" ", "")
        if not text:
            raise FieldError("empty element string")
        code = 0
        for term in text.split("+"):
            if not term:
                raise FieldError(f"bad element string {text!r}")
            coef = 1
            if "*" in term:
                cs, term = term.split("*", 1)
                coef = int(cs)
            if term.isdigit():
                c = self.scalar_code(int(term) * coef)
            elif term == "a":
                c = self.mul_codes(self.p, self.scalar_code(coef))
            elif term.startswith("a^"):
                c = self.mul_codes(self.pow_code(self.p, int(term[2:])), self.scalar_code(coef))
            else:
                raise FieldError(f"bad term {term!r} in element string")
            code = self.add_codes(code, c)
        return code

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec == other.spec

    def __hash__(self):
        return hash(self.spec)

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


class FieldElement:
    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields("elements from different fields")
            return other.code
        if isinstance(other, (int, np.integer)):
            return self.field.scalar_code(int(other))
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_codes(self.code, c))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_codes(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_codes(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_codes(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div_codes(self.code, c))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div_codes(c, self.code))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow_code(self.code, int(n)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def inverse(self):
        return FieldElement(self.field, self.field.inv_code(self.code))

    @property
    def coeffs(self):
        c = _decode(self.code, self.field.p)
        return c + (0,) * (self.field.m - len(c))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)) and other in (0, 1):
            return self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field.spec, self.code))

    def __repr__(self):
        return self.field.format_code(self.code)


@lru_cache(maxsize=None)
def _irreducible_modulus(p, n):
    """Smallest-code monic irreducible of degree n over GF(p)."""
    for code in range(p**n, 2 * p**n):
        coeffs = _decode(code, p)
        if _poly_irreducible(coeffs, p):
            return coeffs
    raise FieldError("no irreducible polynomial found (bug)")


def extension_of(field, k):
    """GF(q^k) together with the code-level embedding GF(q) -> GF(q^k).

    Returns (ext_field, embed) where embed is an integer array of
    length q mapping base codes to extension codes.  The embedding
    sends the base x-class to the first root (in code order) of the
    base modulus inside the extension.
    """
    if k == 1:
        return field, np.arange(field.q, dtype=np.int64)
    if k in field._ext_cache:
        return field._ext_cache[k]
    p = field.p
    ext = Field(FieldSpec(p, field.m * k, _irreducible_modulus(p, field.m * k)))
    # root search, vectorized Horner over all extension codes
    tab = ext.tables()
    codes = np.arange(ext.q, dtype=np.int64)
    acc = np.zeros(ext.q, dtype=np.int64)
    for c in reversed(field.spec.modulus):
        nz = (acc != 0) & (codes != 0)
        prod = np.zeros(ext.q, dtype=np.int64)
        prod[nz] = tab.exp[tab.log[acc[nz]] + tab.log[codes[nz]]]
        cc = ext.scalar_code(c) if p > 2 else c
        if p == 2:
            acc = prod ^ cc
        else:
            acc = np.array([ext.add_codes(int(v), cc) for v in prod], dtype=np.int64)
    roots = np.nonzero(acc == 0)[0]
    if len(roots) == 0:
        raise FieldError("modulus has no root in the extension (bug)")
    root = int(roots[0])
    embed = np.zeros(field.q, dtype=np.int64)
    for code in range(field.q):
        img = 0
        for c in reversed(_decode(code, p)):
            img = ext.add_codes(ext.mul_codes(img, root), ext.scalar_code(c))
        embed[code] = img
    field._ext_cache[k] = (ext, embed)
    return ext, embed
