# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels over char-2 fields; same contracts as core_py."""

import numpy as np

cimport numpy as cnp

NAME = "c"

ctypedef cnp.uint16_t u16
ctypedef cnp.int64_t i64


def matmul(a, b, tab):
    a = np.ascontiguousarray(a, dtype=np.uint16)
    b = np.ascontiguousarray(b, dtype=np.uint16)
    cdef u16[:, ::1] av = a
    cdef u16[:, ::1] bv = b
    cdef Py_ssize_t n = av.shape[0]
    cdef Py_ssize_t inner = av.shape[1]
    cdef Py_ssize_t m = bv.shape[1]
    if bv.shape[0] != inner:
        raise ValueError("inner dimensions differ")
    out = np.zeros((n, m), dtype=np.uint16)
    cdef u16[:, ::1] ov = out
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef Py_ssize_t i, j, k
    cdef u16 aik, bkj
    cdef i64 la
    for i in range(n):
        for k in range(inner):
            aik = av[i, k]
            if aik == 0:
                continue
            la = log[aik]
            for j in range(m):
                bkj = bv[k, j]
                if bkj != 0:
                    ov[i, j] ^= exp[la + log[bkj]]
    return out


def rref(a, tab):
    a = np.array(a, dtype=np.uint16, copy=True, order="C")
    cdef u16[:, ::1] av = a
    cdef Py_ssize_t rows = av.shape[0]
    cdef Py_ssize_t cols = av.shape[1]
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef i64 q = tab.q
    cdef Py_ssize_t r = 0, c, i, j, pr
    cdef u16 pv, f, tmp
    cdef i64 linv, lf
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for i in range(r, rows):
            if av[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(cols):
                tmp = av[r, j]
                av[r, j] = av[pr, j]
                av[pr, j] = tmp
        pv = av[r, c]
        if pv != 1:
            linv = (q - 1 - log[pv]) % (q - 1)
            for j in range(cols):
                if av[r, j] != 0:
                    av[r, j] = exp[log[av[r, j]] + linv]
        for i in range(rows):
            if i == r:
                continue
            f = av[i, c]
            if f == 0:
                continue
            lf = log[f]
            for j in range(cols):
                if av[r, j] != 0:
                    av[i, j] ^= exp[lf + log[av[r, j]]]
        pivots.append(c)
        r += 1
    return a, pivots


def batch_mul_trunc(a, b, tab):
    a = np.ascontiguousarray(a, dtype=np.uint16)
    b = np.ascontiguousarray(b, dtype=np.uint16)
    cdef u16[:, ::1] av = a
    cdef u16[:, ::1] bv = b
    cdef Py_ssize_t na = av.shape[0]
    cdef Py_ssize_t nb = bv.shape[0]
    cdef Py_ssize_t L = av.shape[1]
    if bv.shape[1] != L:
        raise ValueError("window lengths differ")
    out = np.zeros((na, nb, L), dtype=np.uint16)
    cdef u16[:, :, ::1] ov = out
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef Py_ssize_t i, j, u, v
    cdef u16 x, y
    cdef i64 lx
    for i in range(na):
        for u in range(L):
            x = av[i, u]
            if x == 0:
                continue
            lx = log[x]
            for j in range(nb):
                for v in range(L - u):
                    y = bv[j, v]
                    if y != 0:
                        ov[i, j, u + v] ^= exp[lx + log[y]]
    return out


def contract(t, y, tab):
    t = np.ascontiguousarray(t, dtype=np.uint16)
    y = np.ascontiguousarray(y, dtype=np.uint16)
    cdef u16[:, :, ::1] tv = t
    cdef u16[::1] yv = y
    cdef Py_ssize_t na = tv.shape[0]
    cdef Py_ssize_t n = tv.shape[1]
    cdef Py_ssize_t nc = tv.shape[2]
    if yv.shape[0] != n:
        raise ValueError("length mismatch")
    out = np.zeros((na, nc), dtype=np.uint16)
    cdef u16[:, ::1] ov = out
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef Py_ssize_t a, j, c
    cdef u16 yj, tv_
    cdef i64 ly
    for j in range(n):
        yj = yv[j]
        if yj == 0:
            continue
        ly = log[yj]
        for a in range(na):
            for c in range(nc):
                tv_ = tv[a, j, c]
                if tv_ != 0:
                    ov[a, c] ^= exp[ly + log[tv_]]
    return out


def residue_quotient(num, den, num_start, target, tab):
    num = np.ascontiguousarray(num, dtype=np.uint16)
    den = np.ascontiguousarray(den, dtype=np.uint16)
    num_start = np.ascontiguousarray(num_start, dtype=np.int64)
    cdef u16[:, ::1] nv = num
    cdef u16[:, ::1] dv = den
    cdef i64[::1] sv = num_start
    cdef Py_ssize_t n = nv.shape[0]
    cdef Py_ssize_t w = nv.shape[1]
    cdef i64 tgt = target
    out = np.zeros(n, dtype=np.uint16)
    status = np.zeros(n, dtype=np.int64)
    cdef u16[::1] ov = out
    cdef i64[::1] stv = status
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef i64 q = tab.q
    inv_buf = np.zeros(w, dtype=np.uint16)
    cdef u16[::1] inv = inv_buf
    cdef Py_ssize_t i, j, k, v, pos
    cdef u16 acc, u0inv, dij, nk
    for i in range(n):
        v = -1
        for j in range(w):
            if dv[i, j] != 0:
                v = j
                break
        if v < 0:
            stv[i] = 1
            continue
        pos = tgt - (sv[i] - v)
        if pos < 0:
            continue
        if pos >= w or pos >= w - v:
            stv[i] = 2
            continue
        u0inv = exp[(q - 1 - log[dv[i, v]]) % (q - 1)]
        inv[0] = u0inv
        for k in range(1, pos + 1):
            acc = 0
            for j in range(1, k + 1):
                dij = dv[i, v + j]
                if dij != 0 and inv[k - j] != 0:
                    acc ^= exp[log[dij] + log[inv[k - j]]]
            if acc != 0:
                inv[k] = exp[log[acc] + log[u0inv]]
            else:
                inv[k] = 0
        acc = 0
        for k in range(pos + 1):
            nk = nv[i, pos - k]
            if nk != 0 and inv[k] != 0:
                acc ^= exp[log[nk] + log[inv[k]]]
        ov[i] = acc
    return out, status


def bilinear(p, y, q, tab):
    p = np.ascontiguousarray(p, dtype=np.uint16)
    q = np.ascontiguousarray(q, dtype=np.uint16)
    y = np.ascontiguousarray(y, dtype=np.uint16)
    cdef u16[:, ::1] pv = p
    cdef u16[:, ::1] qv = q
    cdef u16[::1] yv = y
    cdef Py_ssize_t rp = pv.shape[0]
    cdef Py_ssize_t rq = qv.shape[0]
    cdef Py_ssize_t n = pv.shape[1]
    if qv.shape[1] != n or yv.shape[0] != n:
        raise ValueError("length mismatch")
    out = np.zeros((rp, rq), dtype=np.uint16)
    cdef u16[:, ::1] ov = out
    cdef u16[::1] exp = tab.exp
    cdef i64[::1] log = tab.log
    cdef i64 qm1 = tab.q - 1
    cdef Py_ssize_t i, j, k
    cdef u16 pij, qkj
    cdef i64 l2
    for j in range(n):
        if yv[j] == 0:
            continue
        for i in range(rp):
            pij = pv[i, j]
            if pij == 0:
                continue
            l2 = (log[yv[j]] + log[pij]) % qm1
            for k in range(rq):
                qkj = qv[k, j]
                if qkj != 0:
                    ov[i, k] ^= exp[l2 + log[qkj]]
    return out
