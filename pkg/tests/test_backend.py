"""The compiled kernel set must agree bit for bit with the numpy one."""

import numpy as np
import pytest

from agkeq import backend
from agkeq.gf import Field

pytestmark = pytest.mark.skipif(
    not backend.HAVE_C, reason="compiled backend not built"
)


def backends():
    return backend.get("py"), backend.get("c")


def rand(rng, q, *shape):
    return rng.integers(0, q, shape, dtype=np.uint16)


@pytest.mark.parametrize("qspec", [(2, 3, (1, 1, 0, 1)), (2, 4, (1, 1, 0, 0, 1))])
def test_matmul_parity(qspec):
    field = Field(qspec)
    tab = field.tables()
    py, cc = backends()
    rng = np.random.default_rng(31)
    for _ in range(30):
        r, k, c = (int(x) for x in rng.integers(1, 25, 3))
        a, b = rand(rng, field.q, r, k), rand(rng, field.q, k, c)
        assert np.array_equal(py.matmul(a, b, tab), cc.matmul(a, b, tab))


def test_rref_parity(f16):
    tab = f16.tables()
    py, cc = backends()
    rng = np.random.default_rng(37)
    for _ in range(30):
        r, c = (int(x) for x in rng.integers(1, 20, 2))
        a = rand(rng, 16, r, c)
        rp, pivp = py.rref(a.copy(), tab)
        rc, pivc = cc.rref(a.copy(), tab)
        assert list(pivp) == list(pivc)
        assert np.array_equal(rp, rc)


def test_batch_mul_trunc_parity(f16):
    tab = f16.tables()
    py, cc = backends()
    rng = np.random.default_rng(41)
    for _ in range(20):
        na, nb, length = (int(x) for x in rng.integers(1, 10, 3))
        a, b = rand(rng, 16, na, length), rand(rng, 16, nb, length)
        assert np.array_equal(py.batch_mul_trunc(a, b, tab), cc.batch_mul_trunc(a, b, tab))


def test_batch_mul_trunc_is_truncated_convolution(f16):
    tab = f16.tables()
    py, _ = backends()
    rng = np.random.default_rng(43)
    a, b = rand(rng, 16, 2, 6), rand(rng, 16, 3, 6)
    out = py.batch_mul_trunc(a, b, tab)
    for i in range(2):
        for j in range(3):
            for k in range(6):
                acc = 0
                for u in range(k + 1):
                    acc ^= f16.mul_codes(int(a[i, u]), int(b[j, k - u]))
                assert acc == int(out[i, j, k])


def test_contract_parity(f16):
    tab = f16.tables()
    py, cc = backends()
    rng = np.random.default_rng(47)
    for _ in range(20):
        na, n, ncol = (int(x) for x in rng.integers(1, 12, 3))
        t = rand(rng, 16, na, n, ncol)
        y = rand(rng, 16, n)
        assert np.array_equal(py.contract(t, y, tab), cc.contract(t, y, tab))


def test_bilinear_parity(f8):
    tab = f8.tables()
    py, cc = backends()
    rng = np.random.default_rng(53)
    for _ in range(20):
        ni, n, nk = (int(x) for x in rng.integers(1, 12, 3))
        p = rand(rng, 8, ni, n)
        q = rand(rng, 8, nk, n)
        y = rand(rng, 8, n)
        assert np.array_equal(py.bilinear(p, y, q, tab), cc.bilinear(p, y, q, tab))


def test_residue_quotient_parity(f16):
    tab = f16.tables()
    py, cc = backends()
    rng = np.random.default_rng(59)
    for _ in range(20):
        n, w = int(rng.integers(1, 16)), int(rng.integers(2, 12))
        num, den = rand(rng, 16, n, w), rand(rng, 16, n, w)
        # a few hard rows: zero denominators and high valuations
        if n > 2:
            den[0] = 0
            den[1, : w // 2] = 0
        starts = rng.integers(-3, 3, n).astype(np.int64)
        target = int(rng.integers(-2, 3))
        op, sp = py.residue_quotient(num, den, starts, target, tab)
        oc, sc = cc.residue_quotient(num, den, starts, target, tab)
        assert np.array_equal(sp, sc)
        assert np.array_equal(op, oc)


def test_residue_quotient_semantics(f16):
    """coeff_target(num/den) against a slow series division."""
    tab = f16.tables()
    py, _ = backends()
    rng = np.random.default_rng(61)
    w = 8
    num, den = rand(rng, 16, 10, w), rand(rng, 16, 10, w)
    den[:, 0] = np.maximum(den[:, 0], 1)
    starts = np.zeros(10, dtype=np.int64)
    target = 3
    out, status = py.residue_quotient(num, den, starts, target, tab)
    assert not status.any()
    for i in range(10):
        # long division: q_k = (num_k - sum_{j<k} q_j den_{k-j}) / den_0
        qs = []
        d0inv = f16.inv_code(int(den[i, 0]))
        for k in range(target + 1):
            acc = int(num[i, k])
            for j in range(k):
                acc ^= f16.mul_codes(qs[j], int(den[i, k - j]))
            qs.append(f16.mul_codes(acc, d0inv))
        assert qs[target] == int(out[i])


def test_zero_denominator_status(f16):
    tab = f16.tables()
    for kern in backends():
        num = np.ones((1, 4), dtype=np.uint16)
        den = np.zeros((1, 4), dtype=np.uint16)
        out, status = kern.residue_quotient(num, den, np.zeros(1, dtype=np.int64), 0, tab)
        assert status[0] == 1 and out[0] == 0


def test_supported_predicate(f8):
    assert backend.supported(f8)
    f9 = Field((3, 2, (1, 0, 1)))
    assert not backend.supported(f9)


def test_forcing_backend_by_name():
    assert backend.get("py").NAME == "py"
    assert backend.get("c").NAME == "c"
    with pytest.raises(ValueError):
        backend.get("fortran")
