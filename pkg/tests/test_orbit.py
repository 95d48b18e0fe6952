from __future__ import annotations

from fractions import Fraction

import pytest

from orbitstab.algebra import GF, QQ
from orbitstab.autmap import Point, diagonal, elementary, henon, identity, point, swap
from orbitstab.errors import SizeLimitError
from orbitstab.orbit import cyclic_orbit, galois_saturate, group_orbit, point_set_sample


def pts(K, pairs):
    return {point(K, x, y) for x, y in pairs}


def test_sqrt2_orbit_window(Q2):
    phi = elementary(Q2, 1, 2, [-2, 0, 1])
    s = cyclic_orbit(phi, Point(Q2("s"), Q2(1)), 3)
    assert set(s.point_list()) == {Point(Q2("s"), Q2(Fraction(2) ** n)) for n in range(-3, 4)}
    assert not s.exhausted and s.periodic is None


def test_identity_is_periodic(Q):
    s = cyclic_orbit(identity(Q), point(Q, 3, 4), 10)
    assert s.point_list() == [point(Q, 3, 4)]
    assert s.periodic == 1 and s.exhausted


def test_two_line_orbit(Q):
    phi = elementary(Q, -1, 2, [-1, 0, 1])
    s = cyclic_orbit(phi, point(Q, 1, 1), 2)
    assert set(s.point_list()) == pts(Q, [(1, 1), (-1, 2), (1, 4), (-1, "1/2"), (1, "1/4")])


def test_period_detected(Q):
    s = cyclic_orbit(diagonal(Q, -1, 1), point(Q, 2, 3), 10)
    assert s.periodic == 2 and len(s) == 2


def test_labels_replay(Q):
    phi = henon(Q, [1, 0, 1])
    s = cyclic_orbit(phi, point(Q, 0, 1), 4)
    for lab, q in s.points:
        assert s.evaluate_label(lab) == q
        assert s.label_map(lab)(s.base_point) == q


def test_window_nesting(Q):
    phi = elementary(Q, 1, 3, [1, 1])
    a = set(cyclic_orbit(phi, point(Q, 1, 0), 5).point_list())
    b = set(cyclic_orbit(phi, point(Q, 1, 0), 6).point_list())
    assert a <= b


def test_group_orbit_finite_field():
    K = GF(5)
    s = group_orbit([diagonal(K, 2, 3)], point(K, 1, 1), 10)
    assert set(s.point_list()) == pts(K, [(1, 1), (2, 3), (4, 4), (3, 2)])
    assert s.exhausted


def test_swap_orbit(Q):
    s = group_orbit([swap(Q)], point(Q, 1, 2), 5)
    assert set(s.point_list()) == pts(Q, [(1, 2), (2, 1)]) and s.exhausted


def test_bfs_depth_two(Q):
    s = group_orbit([diagonal(Q, 2, "1/2"), swap(Q)], point(Q, 2, "1/2"), 2)
    expected = pts(Q, [(2, "1/2"), (4, "1/4"), (1, 1), ("1/2", 2), ("1/4", 4), (8, "1/8")])
    assert set(s.point_list()) == expected
    assert not s.exhausted
    for lab, q in s.points:
        assert s.evaluate_label(lab) == q


def test_galois_saturate(Q2, F4):
    s = Q2("s")
    assert galois_saturate([Point(s, Q2(0))]) == [Point(s, Q2(0)), Point(-s, Q2(0))]
    assert galois_saturate([point(QQ, 1, 2)]) == [point(QQ, 1, 2)]
    t = F4.generator()
    assert set(galois_saturate([Point(t, F4(0))])) == {Point(t, F4(0)), Point(t + 1, F4(0))}


def test_bit_cap_truncates_cyclic(Q):
    s = cyclic_orbit(henon(Q, [0, 0, 1]), point(Q, 1, 2), 20, bit_cap=64)
    assert s.truncated
    assert not s.exhausted


def test_bit_cap_aborts_bfs(Q):
    with pytest.raises(SizeLimitError):
        group_orbit([henon(Q, [0, 0, 1])], point(Q, 1, 2), 20, bit_cap=64)


def test_point_set_sample(Q):
    s = point_set_sample([point(Q, 1, 2), point(Q, 1, 2), point(Q, 0, 0)])
    assert len(s) == 2 and s.exhausted and s.mode == "set"


def test_json_shape(Q):
    d = cyclic_orbit(diagonal(Q, 2, 3), point(Q, 1, 1), 2).to_json()
    assert d["size"] == 5 and d["bound"] == 2 and d["exhausted"] is False
