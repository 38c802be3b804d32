"""Laurent window arithmetic and power series helpers."""

import random

import pytest

from agkeq.errors import DivisionByZero, PrecisionTooSmall
from agkeq.series import Laurent, ps_add, ps_deriv, ps_inv, ps_mul


def rand_coeffs(rng, field, n, unit=False):
    out = [rng.randrange(field.q) for _ in range(n)]
    if unit:
        out[0] = rng.randrange(1, field.q)
    return out


def test_ps_mul_is_truncated_convolution(f8):
    rng = random.Random(1)
    a = rand_coeffs(rng, f8, 6)
    b = rand_coeffs(rng, f8, 6)
    c = ps_mul(a, b, 6, f8)
    for k in range(6):
        acc = 0
        for i in range(k + 1):
            acc = f8.add_codes(acc, f8.mul_codes(a[i], b[k - i]))
        assert c[k] == acc


def test_ps_inv_gives_one(f16):
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randrange(1, 12)
        a = rand_coeffs(rng, f16, n, unit=True)
        inv = ps_inv(a, n, f16)
        prod = ps_mul(a, inv, n, f16)
        assert prod[0] == 1
        assert not any(prod[1:])


def test_ps_deriv(f8):
    # d/dt (c t^k) = k c t^(k-1); in char 2 even slots vanish
    a = [3, 5, 7, 2]
    d = ps_deriv(a, f8)
    assert d == [5, 0, 2]


def test_ps_add_lengths(f8):
    assert ps_add([1, 2], [3], f8) == [f8.add_codes(1, 3), 2]


def test_laurent_coeff_and_window_bounds(f8):
    w = Laurent(f8, -2, [1, 0, 3, 4])
    assert w.coeff(-2) == 1
    assert w.coeff(1) == 4
    assert w.valuation() == -2
    with pytest.raises(PrecisionTooSmall):
        w.coeff(2)
    with pytest.raises(PrecisionTooSmall):
        w.coeff(-3)


def test_laurent_mul_tracks_starts(f16):
    a = Laurent(f16, -1, [1, 2, 3])
    b = Laurent(f16, 2, [4, 5, 6])
    c = a.mul(b)
    assert c.start == 1
    assert c.coeff(1) == f16.mul_codes(1, 4)


def test_laurent_add_alignment(f8):
    a = Laurent(f8, 0, [1, 1, 1, 1])
    b = Laurent(f8, 2, [1, 1])
    s = a.add(b)
    assert s.start == 0
    assert [s.coeff(e) for e in range(4)] == [1, 1, 0, 0]


def test_laurent_div_shifts_by_valuation(f16):
    rng = random.Random(9)
    num = Laurent(f16, 0, rand_coeffs(rng, f16, 8))
    den = Laurent(f16, 0, [0, 0] + rand_coeffs(rng, f16, 6, unit=True))
    q = num.div(den)
    assert q.start == -2
    back = q.mul(den)
    for e in range(0, back.start + back.length):
        assert back.coeff(e) == num.coeff(e)


def test_laurent_div_by_zero_window(f8):
    num = Laurent(f8, 0, [1, 2])
    with pytest.raises(DivisionByZero):
        num.div(Laurent(f8, 0, [0, 0]))


def test_laurent_deriv(f8):
    w = Laurent(f8, -2, [1, 0, 5])
    d = w.deriv()
    # d/dt t^-2 = -2 t^-3 = 0 in char 2, d/dt (5 t^0) = 0
    assert d.start == -3
    assert [d.coeff(e) for e in (-3, -2, -1)] == [0, 0, 0]
    w2 = Laurent(f8, 1, [1])
    assert w2.deriv().coeff(0) == 1


def test_truncate_pads_below_and_raises_above(f8):
    w = Laurent(f8, 0, [1, 2, 3])
    t = w.truncate(-2, 4)
    assert [t.coeff(e) for e in range(-2, 2)] == [0, 0, 1, 2]
    with pytest.raises(PrecisionTooSmall):
        w.truncate(0, 5)
