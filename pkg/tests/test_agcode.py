"""Residue code construction: parameters, parity, en/decoding hooks."""

import numpy as np
import pytest

from agkeq.agcode import AGCode
from agkeq.curve import Divisor
from agkeq.errors import DegreeOutOfRange, LengthMismatch, SupportOverlap
from conftest import hermitian_parts, klein_parts


def test_klein_parameters(klein_plan):
    code = klein_plan.code
    assert (code.n, code.k, code.dstar, code.t) == (21, 11, 8, 3)
    assert code.genus == 3


def test_hermitian_parameters(hermitian_plan):
    code = hermitian_plan.code
    assert (code.n, code.k, code.dstar, code.t) == (64, 46, 13, 6)
    assert code.genus == 6


def test_dimension_formula(klein_plan):
    code = klein_plan.code
    g = code.genus
    assert code.k == code.n - code.gdiv.degree - 1 + g


def test_codewords_annihilate_parity(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(5)
    for _ in range(20):
        c = code.random_codeword(rng)
        assert code.in_code(c)
        assert not code.syndrome(c).any()


def test_syndrome_detects_errors(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(7)
    for _ in range(20):
        c = code.random_codeword(rng)
        e = code.random_error(rng, 1)
        assert not code.in_code(c ^ e)


def test_generator_and_parity_are_orthogonal(klein_plan):
    code = klein_plan.code
    field = code.field
    for row in code.gen:
        for h in code.parity:
            acc = 0
            for a, b in zip(row, h):
                acc = field.add_codes(acc, field.mul_codes(int(a), int(b)))
            assert acc == 0


def test_encode_is_injective(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(9)
    m1 = rng.integers(0, 8, code.k, dtype=np.uint16)
    m2 = m1.copy()
    m2[0] ^= 1
    assert not np.array_equal(code.encode(m1), code.encode(m2))


def test_sampled_codeword_weights_meet_designed_distance(klein_plan, hermitian_plan):
    """Not a proof of d >= d*, but every sampled nonzero codeword
    must clear the designed bound."""
    rng = np.random.default_rng(11)
    for plan in (klein_plan, hermitian_plan):
        code = plan.code
        for _ in range(60):
            c = code.random_codeword(rng)
            w = int(np.count_nonzero(c))
            assert w == 0 or w >= code.dstar


def test_random_error_weight_exact(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(13)
    for w in range(code.n + 1):
        e = code.random_error(rng, w)
        assert int(np.count_nonzero(e)) == w
    with pytest.raises(LengthMismatch):
        code.random_error(rng, code.n + 1)


def test_residue_words_are_codewords(klein_plan):
    """Words built directly from residues of differentials in the
    defining space land in the code."""
    ctx = klein_plan.ctx
    code = klein_plan.code
    # residues of functions in L(K + D - G) give exactly the codewords
    from agkeq.funcspace import rr_space

    div = ctx.k_div + ctx.ddiv - klein_plan.gdiv
    sp = rr_space(klein_plan.curve, div)
    rng = np.random.default_rng(17)
    for _ in range(5):
        combo = rng.integers(0, 8, sp.dim, dtype=np.uint16)
        fn = sp.function(combo)
        word = ctx.residue_vector(fn)
        assert code.in_code(word)


def test_construction_guards():
    curve, dpts, gdiv, pinf = klein_parts()
    with pytest.raises(SupportOverlap):
        AGCode(curve, dpts, Divisor.single(dpts[0], 5))
    with pytest.raises(DegreeOutOfRange):
        AGCode(curve, dpts, Divisor.single(pinf, 3))  # deg <= 2g-2
    with pytest.raises(DegreeOutOfRange):
        AGCode(curve, dpts, Divisor.single(pinf, 21))  # deg >= n
    with pytest.raises(LengthMismatch):
        AGCode(curve, dpts + [dpts[0]], gdiv)


def test_word_length_guard(klein_plan):
    code = klein_plan.code
    with pytest.raises(LengthMismatch):
        code.syndrome(np.zeros(5, dtype=np.uint16))
    with pytest.raises(LengthMismatch):
        code.encode(np.zeros(3, dtype=np.uint16))
