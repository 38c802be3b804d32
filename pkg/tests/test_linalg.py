"""Exact matrix routines: RREF canonicity, kernels, the recursive
product against the naive one, and subspace algebra."""

import numpy as np
import pytest

from agkeq.errors import LinalgError
from agkeq.gf import Field
from agkeq.linalg import (
    Matrix,
    Subspace,
    kernel,
    matmul,
    rank,
    rref,
    rref_with_transform,
    set_default_crossover,
    solve_particular,
)


def rand_matrix(rng, field, r, c):
    return Matrix(field, rng.integers(0, field.q, (r, c), dtype=np.uint16))


def rand_invertible(rng, field, n):
    while True:
        m = rand_matrix(rng, field, n, n)
        if rank(m) == n:
            return m


def test_strassen_equals_naive_rectangular(f8, f16):
    rng = np.random.default_rng(11)
    for trial in range(200):
        field = f8 if trial % 2 else f16
        r = int(rng.integers(1, 40))
        k = int(rng.integers(1, 40))
        c = int(rng.integers(1, 40))
        a = rand_matrix(rng, field, r, k)
        b = rand_matrix(rng, field, k, c)
        naive = matmul(a, b, strategy="naive")
        fast = matmul(a, b, strategy="strassen", crossover=4)
        assert naive == fast


def test_matmul_against_scalar_reference(f8):
    rng = np.random.default_rng(3)
    a = rand_matrix(rng, f8, 5, 7)
    b = rand_matrix(rng, f8, 7, 4)
    prod = matmul(a, b).a
    for i in range(5):
        for j in range(4):
            acc = 0
            for k in range(7):
                acc = f8.add_codes(acc, f8.mul_codes(int(a.a[i, k]), int(b.a[k, j])))
            assert acc == int(prod[i, j])


def test_rref_canonical_on_row_space_pairs(f16):
    """Two bases of the same row space must reduce to the same RREF."""
    rng = np.random.default_rng(5)
    for _ in range(200):
        r = int(rng.integers(1, 10))
        c = int(rng.integers(r, 16))
        a = rand_matrix(rng, f16, r, c)
        s = rand_invertible(rng, f16, r)
        b = matmul(s, a)
        ra, piva = rref(a)
        rb, pivb = rref(b)
        assert piva == pivb
        assert ra == rb


def test_rref_shape_properties(f8):
    rng = np.random.default_rng(8)
    m = rand_matrix(rng, f8, 6, 9)
    r, piv = rref(m)
    for k, p in enumerate(piv):
        col = r.a[:, p]
        assert col[k] == 1 and np.count_nonzero(col) == 1
    assert not r.a[len(piv):].any()


def test_rref_with_transform_reconstructs(f16):
    rng = np.random.default_rng(13)
    m = rand_matrix(rng, f16, 7, 5)
    r, t, piv = rref_with_transform(m)
    assert matmul(t, m) == r
    assert rank(t) == 7
    left_kernel = t.a[len(piv):]
    assert not matmul(Matrix(f16, left_kernel), m).a.any()


def test_kernel_annihilates_and_has_right_dim(f8, f16):
    rng = np.random.default_rng(21)
    for field in (f8, f16):
        for _ in range(50):
            r = int(rng.integers(1, 8))
            c = int(rng.integers(1, 12))
            m = rand_matrix(rng, field, r, c)
            k = kernel(m)
            assert k.shape[0] == c - rank(m)
            if k.shape[0]:
                assert not matmul(m, k.T).a.any()
                assert rank(k) == k.shape[0]


def test_solve_particular(f16):
    rng = np.random.default_rng(2)
    m = rand_matrix(rng, f16, 6, 9)
    x_true = rng.integers(0, 16, 9, dtype=np.uint16)
    b = matmul(m, Matrix(f16, x_true[:, None])).a[:, 0]
    x = solve_particular(m, b)
    assert x is not None
    assert np.array_equal(matmul(m, Matrix(f16, x[:, None])).a[:, 0], b)
    # make the system inconsistent by appending a contradictory row
    m2 = Matrix(f16, np.vstack([m.a, np.zeros((1, 9), dtype=np.uint16)]))
    b2 = np.concatenate([b, np.array([1], dtype=np.uint16)])
    assert solve_particular(m2, b2) is None


def test_subspace_algebra(f8):
    rng = np.random.default_rng(17)
    a = Subspace(f8, rand_matrix(rng, f8, 3, 8).a)
    b = Subspace(f8, rand_matrix(rng, f8, 3, 8).a)
    s = a.sum(b)
    i = a.intersect(b)
    assert s.dim + i.dim == a.dim + b.dim
    assert s.contains(a) and s.contains(b)
    assert a.contains(i) and b.contains(i)
    comp = i.complement_in(a)
    assert comp.shape[0] + i.dim == a.dim
    for row in comp.a:
        assert a.contains_vector(row)


def test_subspace_membership_and_reduce(f8):
    rng = np.random.default_rng(19)
    rows = rand_matrix(rng, f8, 3, 10).a
    sp = Subspace(f8, rows)
    combo = np.zeros(10, dtype=np.uint16)
    for row, c in zip(rows, (1, 3, 5)):
        for j in range(10):
            combo[j] = f8.add_codes(int(combo[j]), f8.mul_codes(c, int(row[j])))
    assert sp.contains_vector(combo)
    assert not sp.contains_vector(np.ones(10, dtype=np.uint16)) or sp.dim == 10


def test_crossover_validation():
    with pytest.raises(LinalgError):
        set_default_crossover(0)
    set_default_crossover(64)


def test_mixed_shapes_rejected(f8, f16):
    rng = np.random.default_rng(1)
    a = rand_matrix(rng, f8, 3, 4)
    b = rand_matrix(rng, f8, 5, 2)
    with pytest.raises(Exception):
        matmul(a, b)
    c = rand_matrix(rng, f16, 4, 2)
    with pytest.raises(Exception):
        matmul(a, c)


def test_odd_sized_strassen_padding(f16):
    rng = np.random.default_rng(23)
    a = rand_matrix(rng, f16, 33, 47)
    b = rand_matrix(rng, f16, 47, 29)
    assert matmul(a, b, strategy="strassen", crossover=8) == matmul(a, b, strategy="naive")
