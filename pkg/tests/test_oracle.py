from __future__ import annotations

import pytest

from orbitstab.algebra import GF
from orbitstab.autmap import diagonal, point
from orbitstab.oracle import (
    GroupTable,
    brute_isotropy,
    brute_stabilizer,
    canonical_curve,
    curve_points,
    enumerate_G,
    family_params,
    isotropy_matches,
    verify_curve,
    verify_theorem_grid,
)


def t3(q):
    return canonical_curve("T3", GF(q), {"lam": GF(q)(1)})


def test_curve_points_count():
    assert len(curve_points(t3(7))) == 6
    d = canonical_curve("T4", GF(7), family_params("T4", GF(7))[0])
    assert len(curve_points(d)) == 8


def test_enumerate_matches_order():
    assert len(enumerate_G(t3(5))) == 8


def test_brute_stabilizer_small():
    K = GF(5)
    d = t3(5)
    assert len(brute_stabilizer(d, point(K, 1, 1), [diagonal(K, 2, 3)])) == 8
    K = GF(13)
    d = t3(13)
    assert len(brute_stabilizer(d, point(K, 1, 1), [diagonal(K, 3, 9)])) == 6


def test_brute_isotropy_conic():
    K = GF(3)
    d = canonical_curve("T4", K, family_params("T4", K)[0])
    assert isotropy_matches(d) == (4, 4)
    assert all(g(point(K, 1, 0)) == point(K, 1, 0) for g in brute_isotropy(d, point(K, 1, 0)))


def test_t5_family_over_f4():
    K = GF(4)
    assert {str(p["mu"]) for p in family_params("T5", K)} == {"t", "t+1"}


@pytest.mark.parametrize("q", [3, 5, 7])
def test_closure_is_subgroup(q):
    table = GroupTable(t3(q))
    for d, j in table.subgroups():
        S = table.closure(table.subgroup_gens(d, j))
        assert len(table.elements) % len(S) == 0
        assert (table.tor.key(table.tor.one()), False) in S


@pytest.mark.parametrize("kind,q", [("T3", 5), ("T3", 7), ("T4", 3), ("T5", 2)])
def test_curve_instances_match(kind, q):
    K = GF(q)
    for params in family_params(kind, K):
        recs = verify_curve(canonical_curve(kind, K, params), q)
        assert recs and all(r.match is not False for r in recs)


def test_small_grid_report():
    grid = verify_theorem_grid({"T3": [3], "T4": [3]})
    assert grid.match_rate == 1.0 and not grid.mismatches
    assert "match rate" in grid.table()
    j = grid.to_json()
    assert j["checked"] == len(grid.checked) and "records" not in j
