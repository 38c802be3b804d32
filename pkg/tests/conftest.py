import numpy as np
import pytest

from agkeq.curve import Divisor, PlaneCurve
from agkeq.decoder import DecoderPlan
from agkeq.gf import Field


def klein_parts():
    field = Field((2, 3, (1, 1, 0, 1)))
    curve = PlaneCurve(field, "X^3*Y + Y^3*Z + Z^3*X")
    pts = curve.rational_points()
    by_coords = {p.coords: p for p in pts}
    q0 = by_coords[(1, 0, 0)]
    q1 = by_coords[(0, 1, 0)]
    q2 = by_coords[(0, 0, 1)]
    dpts = [p for p in pts if p not in (q0, q1, q2)]
    gdiv = Divisor([(q0, 4), (q1, 4), (q2, 4)])
    return curve, dpts, gdiv, q2


def hermitian_parts():
    field = Field((2, 4, (1, 1, 0, 0, 1)))
    curve = PlaneCurve(field, "X^5 + Y^4*Z + Y*Z^4")
    pts = curve.rational_points()
    pinf = next(p for p in pts if p.coords == (0, 1, 0))
    dpts = [p for p in pts if p.coords[2] != 0]
    gdiv = Divisor.single(pinf, 23)
    return curve, dpts, gdiv, pinf


@pytest.fixture(scope="session")
def klein_plan():
    curve, dpts, gdiv, pinf = klein_parts()
    return DecoderPlan.build(curve, dpts, gdiv, pinf=pinf)


@pytest.fixture(scope="session")
def hermitian_plan():
    curve, dpts, gdiv, pinf = hermitian_parts()
    return DecoderPlan.build(curve, dpts, gdiv, pinf=pinf)


@pytest.fixture(scope="session")
def f8():
    return Field((2, 3, (1, 1, 0, 1)))


@pytest.fixture(scope="session")
def f16():
    return Field((2, 4, (1, 1, 0, 0, 1)))


def random_word(rng, field, n):
    return rng.integers(0, field.q, n, dtype=np.uint16)
