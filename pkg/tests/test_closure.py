from __future__ import annotations

from fractions import Fraction

import pytest

from orbitstab.algebra import QQ, BivarPoly, parse_poly
from orbitstab.autmap import Point, diagonal, elementary, henon, identity, point
from orbitstab.closure import (
    component_cycle,
    hat_vs_bar,
    ideal_generators,
    interpolate_ideal,
    is_stable,
    trichotomy,
)
from orbitstab.errors import CycleNotResolved
from orbitstab.orbit import cyclic_orbit, point_set_sample


def strs(polys):
    return [str(f) for f in polys]


def test_sqrt2_pair_base_interpolation(Q2):
    s = Q2("s")
    hat = [Point(s, Q2(0)), Point(-s, Q2(0))]
    basis = interpolate_ideal(hat, 2, "base")
    assert strs(basis) == ["y", "y^2", "x*y", "x^2 - 2"]
    assert strs(ideal_generators(basis, 2)) == ["y", "x^2 - 2"]


def test_weighted_orbit_contains_cusp(Q):
    pts = [point(Q, 1, 1), point(Q, 4, 8), point(Q, 16, 64)]
    basis = interpolate_ideal(pts, 3, "base")
    assert len(basis) == 7
    # three points already satisfy a quadric, so the cusp is only in the span
    assert basis[0].degree == 2
    cusp = parse_poly(Q, "x^3 - y^2")
    from orbitstab.algebra.linalg import rank
    from orbitstab.algebra import monomials_up_to

    monos = monomials_up_to(3)
    rows = [[f.coeff(i, j) for i, j in monos] for f in basis]
    assert rank(rows + [[cusp.coeff(i, j) for i, j in monos]]) == rank(rows)


def test_origin(Q):
    assert strs(interpolate_ideal([point(Q, 0, 0)], 1)) == ["y", "x"]


def test_basis_vanishes(Q):
    s = cyclic_orbit(henon(Q, [0, 0, 1]), point(Q, 0, 0), 3)
    for f in interpolate_ideal(s.point_list(), 4):
        assert all(not f.evaluate(q.x, q.y) for q in s.point_list())


def test_trichotomy_curve(Q):
    s = cyclic_orbit(diagonal(Q, 2, Fraction(1, 2)), point(Q, 1, 1), 10)
    rep = trichotomy(s, 2)
    assert rep.verdict == "curve" and str(rep.F) == "x*y - 1" and rep.stable


def test_trichotomy_finite(Q):
    rep = trichotomy(cyclic_orbit(identity(Q), point(Q, 1, 1), 4), 2)
    assert rep.verdict == "finite" and rep.count == 1


def test_trichotomy_henon(Q):
    rep = trichotomy(cyclic_orbit(henon(Q, [0, 0, 1]), point(Q, 1, 1), 8), 3)
    assert rep.verdict == "no_curve"
    assert "no curve of degree <= 3 detected" in rep.note


def test_hat_vs_bar_sqrt2_orbit(Q2):
    phi = elementary(Q2, 1, 2, [-2, 0, 1])
    hb = hat_vs_bar(cyclic_orbit(phi, Point(Q2("s"), Q2(1)), 6), 2)
    assert str(hb.bar_min) == "x - s" and str(hb.hat_min) == "x^2 - 2"
    assert hb.strict and hb.k == 2 and hb.cross_check


def test_hat_vs_bar_rational(Q):
    hb = hat_vs_bar(cyclic_orbit(diagonal(Q, 4, 8), point(Q, 1, 1), 5), 3)
    assert not hb.strict and hb.k == 1
    assert str(hb.hat_min) == "x^3 - y^2"


def test_dense_orbit_has_no_curve(Q):
    hb = hat_vs_bar(cyclic_orbit(diagonal(Q, 2, 3), point(Q, 1, 1), 5), 3)
    assert hb.hat_basis == [] and hb.k is None


def test_hat_vs_bar_saturated_set(Q2):
    s = Q2("s")
    hb = hat_vs_bar(point_set_sample([Point(s, Q2(0)), Point(-s, Q2(0))]), 2)
    assert hb.bar_basis == hb.hat_basis and not hb.strict
    assert strs(ideal_generators(hb.hat_basis, 2)) == ["y", "x^2 - 2"]


def test_two_component_cycle(Q):
    phi = elementary(Q, -1, 2, [-1, 0, 1])
    cc = component_cycle(phi, point(Q, 1, 1), 2, 4)
    assert cc.ell == 2 and cc.k == 1 and cc.s == 2
    assert strs(cc.components) == ["x - 1", "x + 1"]
    assert all(cc.witnesses) and cc.power_stable and cc.product_matches


def test_one_component_fence(Q):
    cc = component_cycle(elementary(Q, 1, 2, [-1, 1]), point(Q, 1, 1))
    assert cc.ell == 1 and strs(cc.components) == ["x - 1"]


def test_sqrt2_orbit_cycle(Q2):
    cc = component_cycle(elementary(Q2, 1, 2, [-2, 0, 1]), Point(Q2("s"), Q2(1)), 2)
    assert (cc.ell, cc.k, cc.s) == (1, 2, 2)
    assert strs(cc.components) == ["x - s"]


def test_cycle_not_resolved(Q):
    with pytest.raises(CycleNotResolved):
        component_cycle(henon(Q, [0, 0, 1]), point(Q, 1, 1), 2, 2, N=6)


def test_is_stable(Q):
    F = parse_poly(Q, "x*y - 1")
    assert is_stable(F, diagonal(Q, 3, Fraction(1, 3)))
    assert not is_stable(F, diagonal(Q, 3, 3))
