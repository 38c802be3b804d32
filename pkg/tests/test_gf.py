"""Field arithmetic against a from-scratch polynomial oracle."""

import random

import pytest

from agkeq.errors import DivisionByZero, FieldError, MixedFields
from agkeq.gf import Field, FieldSpec


def poly_oracle(field):
    """Naive coefficient-list arithmetic, independent of the table code."""
    p, m, modulus = field.p, field.m, list(field.spec.modulus)

    def decode(code):
        digits = []
        for _ in range(m):
            digits.append(code % p)
            code //= p
        return digits

    def encode(digits):
        code = 0
        for d in reversed(digits):
            code = code * p + (d % p)
        return code

    def add(a, b):
        return encode([(x + y) % p for x, y in zip(decode(a), decode(b))])

    def mul(a, b):
        da, db = decode(a), decode(b)
        prod = [0] * (2 * m)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(len(prod) - 1, m - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i in range(m + 1):
                    prod[top - m + i] = (prod[top - m + i] - c * modulus[i]) % p
        return encode(prod[:m])

    return add, mul


@pytest.mark.parametrize("spec", [(2, 3, (1, 1, 0, 1)), (2, 4, (1, 1, 0, 0, 1))])
def test_arithmetic_matches_polynomial_oracle(spec):
    field = Field(spec)
    add, mul = poly_oracle(field)
    for a in range(field.q):
        for b in range(field.q):
            assert field.add_codes(a, b) == add(a, b)
            assert field.mul_codes(a, b) == mul(a, b)


def test_field_axioms_random_triples(f16):
    rng = random.Random(7)
    for _ in range(300):
        a, b, c = (rng.randrange(f16.q) for _ in range(3))
        assert f16.mul_codes(a, f16.mul_codes(b, c)) == f16.mul_codes(f16.mul_codes(a, b), c)
        lhs = f16.mul_codes(a, f16.add_codes(b, c))
        rhs = f16.add_codes(f16.mul_codes(a, b), f16.mul_codes(a, c))
        assert lhs == rhs


def test_inverses(f8, f16):
    for field in (f8, f16):
        for a in range(1, field.q):
            assert field.mul_codes(a, field.inv_code(a)) == 1
        with pytest.raises(DivisionByZero):
            field.inv_code(0)


def test_pow_matches_repeated_multiplication(f16):
    for a in range(1, f16.q):
        acc = 1
        for n in range(10):
            assert f16.pow_code(a, n) == acc
            acc = f16.mul_codes(acc, a)
        assert f16.pow_code(a, -1) == f16.inv_code(a)
    assert f16.pow_code(0, 0) == 1
    assert f16.pow_code(0, 5) == 0
    with pytest.raises(DivisionByZero):
        f16.pow_code(0, -2)


def test_enumerate_is_zero_then_generator_powers(f8):
    elems = f8.enumerate()
    assert len(elems) == 8
    assert elems[0].code == 0
    assert elems[1].code == 1
    codes = [e.code for e in elems]
    assert len(set(codes)) == 8
    for prev, cur in zip(elems[1:], elems[2:]):
        assert cur.code == f8.mul_codes(prev.code, f8.gen_code)


def test_format_parse_round_trip(f8, f16):
    for field in (f8, f16):
        for code in range(field.q):
            assert field.parse_code(field.format_code(code)) == code


def test_parse_polynomial_strings(f8):
    a = f8.alpha.code
    expected = f8.add_codes(f8.mul_codes(a, a), f8.add_codes(a, 1))
    assert f8.parse_code("a^2 + a + 1") == expected
    assert f8.parse_code("a^2+a+1") == expected
    with pytest.raises(FieldError):
        f8.parse_code("")
    with pytest.raises(FieldError):
        f8.parse_code("b^2")


def test_alpha_is_the_table_generator(f8, f16):
    # both moduli are primitive, so x itself generates the units
    assert f8.alpha_is_gen and f16.alpha_is_gen
    assert f8.format_code(f8.alpha.code) == "a"
    assert f16.format_code(f16.pow_code(f16.alpha.code, 5)) == "a^5"


def test_element_operators(f16):
    a = f16.alpha
    b = a * a + 1
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a != b
    other = Field((2, 3, (1, 1, 0, 1)))
    with pytest.raises(MixedFields):
        _ = a + other.alpha


def test_element_coercions(f8):
    assert f8.element(3).code == 3
    assert f8.element("a").code == f8.alpha.code
    assert f8.element([1, 1]).code == f8.add_codes(1, f8.alpha.code)
    assert f8.element(f8.one).code == 1
    with pytest.raises(FieldError):
        f8.element(8)


def test_bad_specs_rejected():
    with pytest.raises(FieldError):
        FieldSpec(4, 2, (1, 0, 1))
    with pytest.raises(FieldError):
        FieldSpec(2, 3, (1, 1, 0))
    with pytest.raises(FieldError):
        FieldSpec(2, 3, (1, 1, 0, 2))
    with pytest.raises(FieldError):
        Field((2, 3, (1, 0, 0, 1)))


def test_prime_field_formatting():
    f7 = Field((7, 1, (0, 1)))
    assert f7.format_code(5) == "5"
    assert f7.parse_code("5") == 5
    assert f7.add_codes(4, 5) == 2
    assert f7.mul_codes(3, 5) == 1


def test_tables_agree_with_direct_ops(f16):
    tab = f16.tables()
    for a in range(1, f16.q):
        for b in range(1, f16.q):
            assert int(tab.exp[tab.log[a] + tab.log[b]]) == f16.mul_codes(a, b)
