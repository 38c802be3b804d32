"""Plane curves, rational point enumeration, and divisor arithmetic."""

import pytest

from agkeq.curve import Divisor, PlaneCurve, ProjectivePoint
from agkeq.errors import SingularCurve
from agkeq.gf import Field
from conftest import hermitian_parts, klein_parts


def test_klein_genus_and_point_count():
    curve, dpts, gdiv, pinf = klein_parts()
    assert curve.genus == 3
    assert curve.degree == 4
    assert len(curve.rational_points()) == 24
    assert len(dpts) == 21


def test_hermitian_genus_and_point_count():
    curve, dpts, gdiv, pinf = hermitian_parts()
    assert curve.genus == 6
    assert curve.degree == 5
    pts = curve.rational_points()
    assert len(pts) == 65
    at_infinity = [p for p in pts if p.coords[2] == 0]
    assert at_infinity == [pinf]
    assert len(dpts) == 64


def test_points_satisfy_the_equation():
    curve, _, _, _ = klein_parts()
    for p in curve.rational_points():
        assert curve.form.eval_codes(*p.coords) == 0


def test_point_normalization(f8):
    # scalar multiples of the same projective point compare equal
    p = ProjectivePoint(f8, 2, 4, 6)
    c = 5
    q = ProjectivePoint(
        f8, f8.mul_codes(c, 2), f8.mul_codes(c, 4), f8.mul_codes(c, 6)
    )
    assert p == q and hash(p) == hash(q)
    assert p.coords[2] == 1


def test_point_chart_and_affine(f8):
    p = ProjectivePoint(f8, 3, 5, 1)
    assert p.chart == "z"
    assert p.affine == (3, 5)
    q = ProjectivePoint(f8, 1, 0, 0)
    assert q.chart == "x"


def test_rational_points_are_deterministic():
    curve, _, _, _ = klein_parts()
    first = curve.rational_points()
    second = curve.rational_points()
    assert first == second
    assert len(set(first)) == len(first)


def test_singular_curve_rejected(f8):
    with pytest.raises(SingularCurve):
        PlaneCurve(f8, "X*Y*Z")
    # cusp at (0 : 0 : 1): both relevant partials vanish there in char 2
    with pytest.raises(SingularCurve):
        PlaneCurve(f8, "X^2*Z + Y^3")


def test_divisor_arithmetic():
    curve, dpts, _, _ = klein_parts()
    p, q = dpts[0], dpts[1]
    d = Divisor([(p, 2), (q, -1)])
    assert d.degree == 1
    assert d.coeff(p) == 2 and d.coeff(q) == -1 and d.coeff(dpts[2]) == 0
    e = d + Divisor.single(q)
    assert e.coeff(q) == 0
    assert set(e.support()) == {p}
    assert (3 * d).degree == 3
    assert (-d).coeff(p) == -2
    assert d.positive_part().coeff(q) == 0
    # negative_part is the effective divisor -min(d, 0)
    assert d.negative_part().coeff(q) == 1
    assert d.negative_part().is_effective()


def test_divisor_partial_order():
    curve, dpts, _, _ = klein_parts()
    p, q = dpts[0], dpts[1]
    small = Divisor.single(p, 1)
    big = Divisor([(p, 2), (q, 1)])
    assert small <= big
    assert not big <= small
    assert Divisor.zero() <= small
    assert big.is_effective()
    assert not (big - 3 * small).is_effective()


def test_divisor_sup():
    curve, dpts, _, _ = klein_parts()
    p, q = dpts[0], dpts[1]
    a = Divisor([(p, 2), (q, -1)])
    b = Divisor([(p, 1), (q, 3)])
    s = a.sup(b)
    assert s.coeff(p) == 2 and s.coeff(q) == 3


def test_canonical_divisor_degree():
    for parts in (klein_parts, hermitian_parts):
        curve = parts()[0]
        k = curve.canonical_divisor()
        assert k.degree == 2 * curve.genus - 2


def test_line_divisor_degree():
    """A line meets a degree-d curve in d points with multiplicity."""
    curve, _, _, _ = klein_parts()
    div = curve.z_line_divisor()
    assert div.degree == curve.degree
    assert div.is_effective()


def test_genus_formula_on_a_cubic(f8):
    # genus (d-1)(d-2)/2; in char 2 this cubic is smooth everywhere
    cubic = PlaneCurve(f8, "X^3 + Y^2*Z + Y*Z^2")
    assert cubic.genus == 1
    with pytest.raises(Exception):
        PlaneCurve(f8, "X^2 + Y*Z")


def test_point_constructor_rejects_zero(f8):
    with pytest.raises(Exception):
        ProjectivePoint(f8, 0, 0, 0)
