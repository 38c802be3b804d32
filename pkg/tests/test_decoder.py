"""End-to-end decoding through the full round loop."""

import numpy as np
import pytest

from agkeq.curve import Divisor
from agkeq.decoder import DecoderPlan
from agkeq.errors import CapacityZero, InvariantViolation, SupportOverlap
from conftest import klein_parts


def test_exact_recovery_within_capacity_klein(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(101)
    for w in range(klein_plan.t + 1):
        for _ in range(25):
            c = code.random_codeword(rng)
            e = code.random_error(rng, w)
            out = klein_plan.decode(c ^ e)
            assert out.ok, out.reason
            assert np.array_equal(out.error, e)
            assert np.array_equal(out.codeword, c)
            assert out.weight == w


def test_exact_recovery_within_capacity_hermitian(hermitian_plan):
    code = hermitian_plan.code
    rng = np.random.default_rng(103)
    for w in (0, 3, 6):
        for _ in range(4):
            c = code.random_codeword(rng)
            e = code.random_error(rng, w)
            out = hermitian_plan.decode(c ^ e)
            assert out.ok, out.reason
            assert np.array_equal(out.error, e)


def test_decoding_is_deterministic(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(107)
    y = code.random_codeword(rng) ^ code.random_error(rng, 3)
    a = klein_plan.decode(y)
    b = klein_plan.decode(y)
    assert a.ok == b.ok and a.rounds_used == b.rounds_used
    assert np.array_equal(a.error, b.error)


def test_cap_below_weight_fails_cleanly(klein_plan):
    """A candidate above the cap cannot be accepted, and no other
    codeword sits close enough, so the decoder must report failure."""
    code = klein_plan.code
    rng = np.random.default_rng(109)
    c = code.random_codeword(rng)
    e = code.random_error(rng, 2)
    out = klein_plan.decode(c ^ e, cap=1)
    assert not out.ok


def test_branch_ii_alone_suffices(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(113)
    for w in (2, 3):
        c = code.random_codeword(rng)
        e = code.random_error(rng, w)
        out = klein_plan.decode(c ^ e, use_branch_i=False)
        assert out.ok
        assert np.array_equal(out.error, e)


def test_ke_only_mode(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(127)
    c = code.random_codeword(rng)
    e = code.random_error(rng, klein_plan.nu)
    out = klein_plan.decode(c ^ e, ke_only=True)
    assert out.ok and out.rounds_used == 0
    assert np.array_equal(out.error, e)


def test_beyond_capacity_never_lies(klein_plan):
    """Past the designed radius the decoder may fail or return some
    other codeword, but an ok outcome must be internally consistent."""
    code = klein_plan.code
    rng = np.random.default_rng(131)
    for _ in range(15):
        c = code.random_codeword(rng)
        e = code.random_error(rng, klein_plan.t + 1)
        y = c ^ e
        out = klein_plan.decode(y)
        if out.ok:
            assert code.in_code(out.codeword)
            assert np.array_equal(out.codeword ^ out.error, y)
            assert out.weight <= klein_plan.t


def test_trace_structure(klein_plan):
    code = klein_plan.code
    rng = np.random.default_rng(137)
    c = code.random_codeword(rng)
    e = code.random_error(rng, 3)
    out = klein_plan.decode(c ^ e)
    assert out.ok
    assert out.rounds_used == out.trace[-1]["r"]
    assert [t["r"] for t in out.trace] == list(range(len(out.trace)))
    for entry in out.trace[:-1]:
        assert "coset" in entry


def test_word_length_guard(klein_plan):
    with pytest.raises(InvariantViolation):
        klein_plan.decode(np.zeros(5, dtype=np.uint16))


def test_f0_override():
    curve, dpts, gdiv, pinf = klein_parts()
    plan = DecoderPlan.build(curve, dpts, gdiv, pinf=pinf, f0=Divisor.single(pinf, 2))
    assert plan.f0.degree == 2
    code = plan.code
    rng = np.random.default_rng(139)
    for _ in range(5):
        c = code.random_codeword(rng)
        e = code.random_error(rng, 2)
        out = plan.decode(c ^ e)
        assert out.ok
        assert np.array_equal(out.error, e)


def test_branch_i_ladder_variant():
    curve, dpts, gdiv, pinf = klein_parts()
    plan = DecoderPlan.build(curve, dpts, gdiv, pinf=pinf, branch_i_divisor="Gr")
    code = plan.code
    rng = np.random.default_rng(149)
    for w in (1, 3):
        c = code.random_codeword(rng)
        e = code.random_error(rng, w)
        out = plan.decode(c ^ e)
        assert out.ok
        assert np.array_equal(out.error, e)


def test_build_guards():
    curve, dpts, gdiv, pinf = klein_parts()
    with pytest.raises(SupportOverlap):
        DecoderPlan.build(curve, dpts + [pinf], gdiv, pinf=pinf)
    with pytest.raises(CapacityZero):
        DecoderPlan.build(curve, dpts, Divisor.single(pinf, 5), pinf=pinf)
    with pytest.raises(SupportOverlap):
        DecoderPlan.build(curve, dpts, gdiv, pinf=pinf, f0=Divisor.single(dpts[0], 3))
