"""Pure-python kernel set for char-2 fields, vectorized with numpy.

Matrices are 2-D numpy arrays of element codes (uint16), tables come
from Field.tables().  Addition is XOR; multiplication goes through the
exp/log tables with explicit zero masks.  The compiled backend exposes
the same functions with identical results.
"""

import numpy as np

NAME = "py"


def _vmul(x, y, exp, log):
    """Elementwise code product with broadcasting."""
    x = np.asarray(x)
    y = np.asarray(y)
    shape = np.broadcast_shapes(x.shape, y.shape)
    out = np.zeros(shape, dtype=np.uint16)
    nz = (x != 0) & (y != 0)
    if nz.any():
        xs = np.broadcast_to(x, shape)[nz].astype(np.int64)
        ys = np.broadcast_to(y, shape)[nz].astype(np.int64)
        out[nz] = exp[log[xs] + log[ys]]
    return out


def vec_mul(x, y, tab):
    return _vmul(x, y, tab.exp, tab.log)


def scale(x, c, tab):
    """Multiply every entry of x by the scalar code c."""
    if c == 0:
        return np.zeros_like(np.asarray(x, dtype=np.uint16))
    if c == 1:
        return np.asarray(x, dtype=np.uint16).copy()
    return _vmul(x, np.uint16(c), tab.exp, tab.log)


def matmul(a, b, tab):
    a = np.ascontiguousarray(a, dtype=np.uint16)
    b = np.ascontiguousarray(b, dtype=np.uint16)
    n, inner = a.shape
    inner2, m = b.shape
    assert inner == inner2
    out = np.zeros((n, m), dtype=np.uint16)
    exp, log = tab.exp, tab.log
    for k in range(inner):
        col = a[:, k]
        row = b[k, :]
        if col.any() and row.any():
            out ^= _vmul(col[:, None], row[None, :], exp, log)
    return out


def rref(a, tab):
    """Reduced row echelon form; returns (new array, pivot column list)."""
    a = np.array(a, dtype=np.uint16, copy=True)
    rows, cols = a.shape
    exp, log, q = tab.exp, tab.log, tab.q
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            a[[r, pr]] = a[[pr, r]]
        pv = int(a[r, c])
        if pv != 1:
            inv = int(exp[(q - 1 - log[pv]) % (q - 1)])
            a[r] = _vmul(a[r], np.uint16(inv), exp, log)
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            a[hit] ^= _vmul(col[hit][:, None], a[r][None, :], exp, log)
        pivots.append(c)
        r += 1
    return a, pivots


def batch_mul_trunc(a, b, tab):
    """Truncated convolutions of all row pairs.

    a: (na, L), b: (nb, L) -> out (na, nb, L) with
    out[i, j, k] = sum_{u+v=k} a[i, u] * b[j, v].
    """
    a = np.ascontiguousarray(a, dtype=np.uint16)
    b = np.ascontiguousarray(b, dtype=np.uint16)
    na, la = a.shape
    nb, lb = b.shape
    assert la == lb
    out = np.zeros((na, nb, la), dtype=np.uint16)
    exp, log = tab.exp, tab.log
    for u in range(la):
        col = a[:, u]
        if not col.any():
            continue
        out[:, :, u:] ^= _vmul(col[:, None, None], b[None, :, : la - u], exp, log)
    return out


def contract(t, y, tab):
    """E[a, c] = sum_j y[j] * t[a, j, c] for a 3-D tensor t."""
    t = np.ascontiguousarray(t, dtype=np.uint16)
    y = np.ascontiguousarray(y, dtype=np.uint16)
    na, n, nc = t.shape
    assert y.shape == (n,)
    out = np.zeros((na, nc), dtype=np.uint16)
    exp, log = tab.exp, tab.log
    for j in range(n):
        yj = int(y[j])
        if yj == 0:
            continue
        out ^= _vmul(t[:, j, :], np.uint16(yj), exp, log)
    return out


def bilinear(p, y, q, tab):
    """B[i, k] = sum_j p[i, j] * y[j] * q[k, j]."""
    p = np.ascontiguousarray(p, dtype=np.uint16)
    q = np.ascontiguousarray(q, dtype=np.uint16)
    y = np.ascontiguousarray(y, dtype=np.uint16)
    py = _vmul(p, y[None, :], tab.exp, tab.log)
    return matmul(py, q.T, tab)


def residue_quotient(num, den, num_start, target, tab):
    """Per-row Laurent quotient coefficient extraction.

    Row i holds the coefficients of a series num_i (starting at
    exponent num_start[i]) and den_i (starting at exponent 0).  Writes
    coeff_{target}(num_i / den_i) into out[i].  status[i] is 0 on
    success, 1 when den_i is identically zero on its window, 2 when
    the requested coefficient is beyond the exact part of the quotient.
    """
    num = np.ascontiguousarray(num, dtype=np.uint16)
    den = np.ascontiguousarray(den, dtype=np.uint16)
    n, w = num.shape
    exp, log, q = tab.exp, tab.log, tab.q

    def fmul(a, b):
        if a == 0 or b == 0:
            return 0
        return int(exp[log[a] + log[b]])

    out = np.zeros(n, dtype=np.uint16)
    status = np.zeros(n, dtype=np.int64)
    for i in range(n):
        nz = np.nonzero(den[i])[0]
        if len(nz) == 0:
            status[i] = 1
            continue
        v = int(nz[0])
        pos = target - (int(num_start[i]) - v)
        if pos < 0:
            continue
        if pos >= w or pos >= w - v:
            status[i] = 2
            continue
        # invert the unit part of den to length pos+1
        u0inv = int(exp[(q - 1 - log[den[i, v]]) % (q - 1)])
        inv = [u0inv]
        for k in range(1, pos + 1):
            acc = 0
            for j in range(1, k + 1):
                acc ^= fmul(int(den[i, v + j]) if v + j < w else 0, inv[k - j])
            inv.append(fmul(acc, u0inv))
        acc = 0
        for k in range(pos + 1):
            acc ^= fmul(int(num[i, pos - k]), inv[k])
        out[i] = acc
    return out, status
