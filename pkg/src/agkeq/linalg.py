"""Exact dense linear algebra over GF(p^m).

Vectors are rows throughout.  Char-2 fields of table size dispatch to
the kernel backend; other characteristics run on generic scalar loops
(correct, slower).  RREF output is canonical, so equality of row
spaces is equality of arrays.
"""

import numpy as np

from . import backend
from .errors import DimensionMismatch, LinalgError, NotSubspace

DEFAULT_CROSSOVER = 64


def set_default_crossover(n):
    """Set the module-wide Strassen crossover used when none is passed."""
    global DEFAULT_CROSSOVER
    if n < 1:
        raise LinalgError("crossover must be at least 1")
    DEFAULT_CROSSOVER = int(n)


def code_dtype(field):
    return np.uint16 if field.q <= (1 << 16) else np.uint32


class Matrix:
    """A dense matrix of field elements, stored as a numpy code array."""

    __slots__ = ("field", "a")

    def __init__(self, field, data):
        self.field = field
        if isinstance(data, Matrix):
            data = data.a
        if isinstance(data, np.ndarray):
            a = data.astype(code_dtype(field), copy=True)
        else:
            rows = []
            for row in data:
                rows.append([field.element(x).code for x in row])
            a = np.array(rows, dtype=code_dtype(field))
            if a.ndim == 1:
                a = a.reshape(0, 0) if len(rows) == 0 else a.reshape(len(rows), -1)
        if a.ndim != 2:
            raise DimensionMismatch("matrix data must be two-dimensional")
        self.a = a

    @classmethod
    def zeros(cls, field, r, c):
        return cls(field, np.zeros((r, c), dtype=code_dtype(field)))

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=code_dtype(field)))

    @property
    def shape(self):
        return self.a.shape

    @property
    def T(self):
        return Matrix(self.field, self.a.T)

    def __getitem__(self, ij):
        i, j = ij
        return self.field.element(int(self.a[i, j]))

    def row(self, i):
        return [self.field.element(int(c)) for c in self.a[i]]

    def __add__(self, other):
        self._check(other)
        if self.field.p == 2:
            return Matrix(self.field, self.a ^ other.a)
        out = [
            [self.field.add_codes(int(x), int(y)) for x, y in zip(r1, r2)]
            for r1, r2 in zip(self.a, other.a)
        ]
        return Matrix(self.field, np.array(out, dtype=code_dtype(self.field)))

    def __sub__(self, other):
        if self.field.p == 2:
            return self + other
        return self + other.scaled(self.field.p - 1)

    def scaled(self, c):
        c = self.field.element(c).code
        if backend.supported(self.field):
            return Matrix(self.field, backend.scale(self.a, c, self.field.tables()))
        out = [[self.field.mul_codes(int(x), c) for x in row] for row in self.a]
        return Matrix(self.field, np.array(out, dtype=code_dtype(self.field)).reshape(self.a.shape))

    def _check(self, other):
        if not isinstance(other, Matrix) or other.field != self.field:
            raise DimensionMismatch("operands must be matrices over the same field")
        if other.shape != self.shape:
            raise DimensionMismatch(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    def __repr__(self):
        rows = [" ".join(self.field.format_code(int(c)) for c in row) for row in self.a]
        return "[" + "; ".join(rows) + "]"


# -- generic scalar-loop fallbacks (any characteristic) --


def _matmul_generic(field, a, b):
    n, inner = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=code_dtype(field))
    for i in range(n):
        for k in range(inner):
            c = int(a[i, k])
            if not c:
                continue
            for j in range(m):
                d = int(b[k, j])
                if d:
                    out[i, j] = field.add_codes(int(out[i, j]), field.mul_codes(c, d))
    return out


def _rref_generic(field, a):
    a = a.astype(np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if a[i, c]), None)
        if pr is None:
            continue
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        inv = field.inv_code(int(a[r, c]))
        for j in range(cols):
            a[r, j] = field.mul_codes(int(a[r, j]), inv)
        for i in range(rows):
            if i != r and a[i, c]:
                f = int(a[i, c])
                for j in range(cols):
                    a[i, j] = field.sub_codes(int(a[i, j]), field.mul_codes(f, int(a[r, j])))
        pivots.append(c)
        r += 1
    return a.astype(code_dtype(field)), pivots


# -- public operations --


def _raw_matmul(field, a, b):
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=code_dtype(field))
    if backend.supported(field):
        return backend.matmul(a, b, field.tables())
    return _matmul_generic(field, a, b)


def _pad(a, r, c):
    if a.shape == (r, c):
        return a
    out = np.zeros((r, c), dtype=a.dtype)
    out[: a.shape[0], : a.shape[1]] = a
    return out


def _strassen(field, a, b, crossover):
    n, k = a.shape
    m = b.shape[1]
    if max(n, k, m) <= crossover or min(n, k, m) <= 1 or field.p != 2:
        return _raw_matmul(field, a, b)
    n2, k2, m2 = n + (n & 1), k + (k & 1), m + (m & 1)
    a = _pad(a, n2, k2)
    b = _pad(b, k2, m2)
    hn, hk, hm = n2 // 2, k2 // 2, m2 // 2
    a11, a12, a21, a22 = a[:hn, :hk], a[:hn, hk:], a[hn:, :hk], a[hn:, hk:]
    b11, b12, b21, b22 = b[:hk, :hm], b[:hk, hm:], b[hk:, :hm], b[hk:, hm:]
    p1 = _strassen(field, a11 ^ a22, b11 ^ b22, crossover)
    p2 = _strassen(field, a21 ^ a22, b11, crossover)
    p3 = _strassen(field, a11, b12 ^ b22, crossover)
    p4 = _strassen(field, a22, b21 ^ b11, crossover)
    p5 = _strassen(field, a11 ^ a12, b22, crossover)
    p6 = _strassen(field, a21 ^ a11, b11 ^ b12, crossover)
    p7 = _strassen(field, a12 ^ a22, b21 ^ b22, crossover)
    out = np.zeros((n2, m2), dtype=a.dtype)
    out[:hn, :hm] = p1 ^ p4 ^ p5 ^ p7
    out[:hn, hm:] = p3 ^ p5
    out[hn:, :hm] = p2 ^ p4
    out[hn:, hm:] = p1 ^ p3 ^ p2 ^ p6
    return out[:n, :m]


def matmul(a, b, strategy="auto", crossover=None):
    """Product of two matrices; strategy in {"naive", "strassen", "auto"}."""
    if a.field != b.field:
        raise DimensionMismatch("mixed fields")
    field = a.field
    if crossover is None:
        crossover = DEFAULT_CROSSOVER
    if strategy == "naive":
        out = _raw_matmul(field, a.a, b.a)
    elif strategy == "strassen":
        out = _strassen(field, a.a, b.a, crossover)
    elif strategy == "auto":
        n, k = a.shape
        m = b.shape[1]
        if field.p == 2 and min(n, k, m) > 2 * crossover:
            out = _strassen(field, a.a, b.a, crossover)
        else:
            out = _raw_matmul(field, a.a, b.a)
    else:
        raise LinalgError(f"unknown strategy {strategy!r}")
    return Matrix(field, out)


def raw_rref(field, a):
    """(rref array, pivot list) for a raw code array."""
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.astype(code_dtype(field), copy=True), []
    if backend.supported(field):
        return backend.rref(a, field.tables())
    return _rref_generic(field, a)


def rref(m):
    """Canonical reduced row echelon form; returns (Matrix, pivots)."""
    r, piv = raw_rref(m.field, m.a)
    return Matrix(m.field, r), piv


def rank(m):
    return len(rref(m)[1])


def rref_with_transform(m):
    """(R, T, pivots) with T.A = R, T invertible, R the canonical RREF.

    Rows of T beyond rank(A) span the left kernel of A.
    """
    field = m.field
    r, c = m.shape
    aug = np.zeros((r, c + r), dtype=code_dtype(field))
    aug[:, :c] = m.a
    aug[np.arange(r), c + np.arange(r)] = 1
    rr, piv = raw_rref(field, aug)
    pivots = [p for p in piv if p < c]
    return Matrix(field, rr[:, :c]), Matrix(field, rr[:, c:]), pivots


def kernel(m):
    """Rows spanning {x : m @ x^T = 0}, canonical from the RREF."""
    field = m.field
    r, piv = raw_rref(field, m.a)
    cols = m.shape[1]
    free = [j for j in range(cols) if j not in piv]
    out = np.zeros((len(free), cols), dtype=code_dtype(field))
    for i, f in enumerate(free):
        out[i, f] = 1
        for k, p in enumerate(piv):
            # x_p = -R[k, f]; in char 2 negation is identity
            out[i, p] = field.neg_code(int(r[k, f]))
    return Matrix(field, out)


def solve_particular(m, b):
    """One x with m @ x^T = b^T, or None when the system is inconsistent."""
    field = m.field
    r, c = m.shape
    bb = np.asarray([field.element(x).code for x in b] if not isinstance(b, np.ndarray) else b)
    if bb.shape != (r,):
        raise DimensionMismatch("right-hand side length mismatch")
    aug = np.zeros((r, c + 1), dtype=code_dtype(field))
    aug[:, :c] = m.a
    aug[:, c] = bb
    rr, piv = raw_rref(field, aug)
    if c in piv:
        return None
    x = np.zeros(c, dtype=code_dtype(field))
    for k, p in enumerate(piv):
        x[p] = rr[k, c]
    return x


class Subspace:
    """A row space held in canonical RREF form."""

    __slots__ = ("field", "basis", "pivots", "ambient")

    def __init__(self, field, rows, ambient=None):
        self.field = field
        if isinstance(rows, Matrix):
            a = rows.a
        elif isinstance(rows, np.ndarray):
            a = rows
        else:
            a = Matrix(field, rows).a if len(rows) else np.zeros((0, ambient or 0), dtype=code_dtype(field))
        if a.ndim != 2:
            raise DimensionMismatch("need a 2-d row collection")
        if ambient is not None and a.shape[1] != ambient and a.shape[0] > 0:
            raise DimensionMismatch("ambient mismatch")
        amb = a.shape[1] if a.shape[0] > 0 or ambient is None else ambient
        r, piv = raw_rref(field, a)
        self.basis = r[: len(piv)].copy()
        self.pivots = tuple(piv)
        self.ambient = amb

    @classmethod
    def full(cls, field, n):
        return cls(field, np.eye(n, dtype=code_dtype(field)))

    @classmethod
    def zero(cls, field, n):
        return cls(field, np.zeros((0, n), dtype=code_dtype(field)), ambient=n)

    @property
    def dim(self):
        return self.basis.shape[0]

    def matrix(self):
        return Matrix(self.field, self.basis)

    def reduce(self, v):
        """Residual of v after elimination against the basis."""
        v = np.array(v, dtype=code_dtype(self.field), copy=True)
        f = self.field
        if backend.supported(f) and self.dim:
            tab = f.tables()
            coeff = v[list(self.pivots)].copy()
            nz = np.nonzero(coeff)[0]
            if len(nz):
                v ^= backend.matmul(coeff[None, :], self.basis, tab)[0]
            return v
        for k, p in enumerate(self.pivots):
            c = int(v[p])
            if c:
                for j in range(self.ambient):
                    v[j] = f.sub_codes(int(v[j]), f.mul_codes(c, int(self.basis[k, j])))
        return v

    def contains_vector(self, v):
        return not self.reduce(v).any()

    def contains(self, other):
        if other.ambient != self.ambient:
            raise DimensionMismatch("different ambient spaces")
        return all(self.contains_vector(row) for row in other.basis)

    def sum(self, other):
        self._same_ambient(other)
        return Subspace(self.field, np.vstack([self.basis, other.basis]), ambient=self.ambient)

    def intersect(self, other):
        """Zassenhaus: rref of [[A A], [B 0]]; zero-left rows carry it."""
        self._same_ambient(other)
        n = self.ambient
        da, db = self.dim, other.dim
        if da == 0 or db == 0:
            return Subspace.zero(self.field, n)
        big = np.zeros((da + db, 2 * n), dtype=code_dtype(self.field))
        big[:da, :n] = self.basis
        big[:da, n:] = self.basis
        big[da:, :n] = other.basis
        r, piv = raw_rref(self.field, big)
        keep = [i for i in range(len(piv)) if piv[i] >= n]
        return Subspace(self.field, r[keep, n:] if keep else np.zeros((0, n), dtype=code_dtype(self.field)), ambient=n)

    def complement_in(self, other):
        """Rows of `other`'s canonical basis completing self inside other.

        Requires self <= other; the result's rows are other's RREF rows
        whose pivots are not pivots of self, so the choice is canonical
        and spans a direct complement.
        """
        self._same_ambient(other)
        if not other.contains(self):
            raise NotSubspace("complement_in requires containment")
        mine = set(self.pivots)
        if not set(self.pivots) <= set(other.pivots):
            # cannot happen for genuine containment with canonical rref
            raise NotSubspace("pivot sets inconsistent (bug)")
        rows = [other.basis[k] for k, p in enumerate(other.pivots) if p not in mine]
        out = (
            np.array(rows, dtype=code_dtype(self.field))
            if rows
            else np.zeros((0, self.ambient), dtype=code_dtype(self.field))
        )
        return Matrix(self.field, out)

    def _same_ambient(self, other):
        if not isinstance(other, Subspace) or other.field != self.field:
            raise DimensionMismatch("subspaces over different fields")
        if other.ambient != self.ambient:
            raise DimensionMismatch("different ambient spaces")

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __repr__(self):
        return f"<Subspace dim {self.dim} of F^{self.ambient}>"
