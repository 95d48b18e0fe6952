"""End-to-end criteria. Each test prints one PASS/FAIL line with its timing."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import pytest
from orbitstab.algebra import GF, QQ, QuadraticField, parse_poly, poly_pullback
from orbitstab.autmap import Point, compose, diagonal, elementary, henon, point, swap
from orbitstab.classify import classify_canonical
from orbitstab.closure import component_cycle, hat_vs_bar, ideal_generators
from orbitstab.oracle import canonical_curve, family_params, isotropy_matches, verify_theorem_grid
from orbitstab.orbit import cyclic_orbit, galois_saturate, point_set_sample
from orbitstab.stabilizer import cyclic_orbit_stabilizer, dynamical_degree, isotropy, membership

FIXTURES = Path(__file__).parent / "fixtures"


@contextmanager
def criterion(capsys, name: str, limit: float):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < limit
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name} ({dt:.2f}s, limit {limit:g}s)")
    assert dt < limit, f"{name} took {dt:.2f}s"


def test_c1_finite_set_example(capsys):
    with criterion(capsys, "1 sqrt(2) set: hat ideal and membership", 1):
        K = QuadraticField(2)
        s = K("s")
        delta = point_set_sample([Point(s, K(0))])
        hat = point_set_sample(galois_saturate(delta.point_list()))
        hb = hat_vs_bar(delta, 2)
        assert [str(f) for f in ideal_generators(hb.hat_basis, 2)] == ["y", "x^2 - 2"]
        phi = elementary(K, -1, 1, [-2, 0, 1])
        assert membership(phi, hat).verdict == "in"
        assert membership(phi, delta).verdict == "out"


def _pythagorean(n: int) -> list:
    out = []
    for m in range(n):
        t = Fraction(m, n - m) if m else Fraction(0)
        out.append(point(QQ, (1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return out


def _check_isotropy(desc, p) -> None:
    F = desc.F
    for g in isotropy(desc, p).elements:
        assert g(p) == p
        assert F.is_associate(poly_pullback(F, g))


def test_c2_isotropy_suite(capsys):
    with criterion(capsys, "2 isotropy suite over Q and small finite fields", 5):
        hyper = classify_canonical(parse_poly(QQ, "x*y - 1"))
        circle = classify_canonical(parse_poly(QQ, "x^2 + y^2 - 1"))
        for k in range(1, 26):
            x = Fraction(k, 26 - k) * (-1) ** k
            _check_isotropy(hyper, point(QQ, x, 1 / x))
        for p in _pythagorean(25):
            _check_isotropy(circle, p)
        runs = 0
        for q in (2, 3, 4, 5, 7):
            K = GF(q)
            for kind in ("T3", "T4", "T5"):
                for params in family_params(kind, K):
                    desc = canonical_curve(kind, K, params)
                    total, ok = isotropy_matches(desc)
                    assert total == ok
                    runs += 1
        assert runs >= 10


@pytest.mark.slow
def test_c3_exhaustive_grid(capsys):
    with criterion(capsys, "3 exhaustive stabilizer grid", 60):
        grid = verify_theorem_grid()
        assert grid.checked and grid.match_rate == 1.0, grid.mismatches[:3]
        with capsys.disabled():
            print(f"       {len(grid.checked)} instances matched, {grid.skips} skipped (torus isotropy)")


@pytest.mark.parametrize(
    "name,phi",
    [
        ("cyclic_a", diagonal(QQ, 4, 8)),
        ("cyclic_b", diagonal(QQ, 2, Fraction(1, 2))),
        ("cyclic_c", elementary(QQ, 1, 2, [-1, 1])),
    ],
)
def test_c4_cyclic_fixtures(capsys, name, phi):
    with criterion(capsys, f"4 cyclic stabilizer fixture {name}", 5):
        st = cyclic_orbit_stabilizer(phi, point(QQ, 1, 1))
        assert st.to_json() == json.loads((FIXTURES / f"{name}.json").read_text())
        if name == "cyclic_a":
            assert st.case_tag == "Cyclic_a" and str(st.curve.F) == "x^3 - y^2"
        elif name == "cyclic_b":
            assert st.case_tag == "Cyclic_b_i" and st.relation == -1
            assert compose(swap(QQ), phi) == compose(phi.inverse(), swap(QQ))
        else:
            assert st.case_tag == "Cyclic_c" and not st.complete
            psi = elementary(QQ, 1, 1, [1, -2, 1])
            orbit = cyclic_orbit(phi, point(QQ, 1, 1), 50)
            r = membership(psi, orbit, st)
            assert r.verdict == "in" and "Ker(R)" in r.reason


def test_c5_component_cycles(capsys):
    with criterion(capsys, "5 component cycles", 2):
        phi = elementary(QQ, -1, 2, [-1, 0, 1])
        cc = component_cycle(phi, point(QQ, 1, 1))
        assert cc.ell == 2 and [str(c) for c in cc.components] == ["x - 1", "x + 1"]
        a, b = cc.components
        assert poly_pullback(a, phi).is_associate(b) and poly_pullback(b, phi).is_associate(a)
        K = QuadraticField(2)
        cc = component_cycle(elementary(K, 1, 2, [-2, 0, 1]), Point(K("s"), K(1)), 2)
        assert (cc.ell, cc.k, cc.s) == (1, 2, 2)


def test_c6_dynamical_degree(capsys):
    with criterion(capsys, "6 dynamical degree of the quadratic Henon map", 5):
        dd = dynamical_degree(henon(QQ, [0, 0, 1]), 8)
        assert dd.degrees == [2**m for m in range(1, 9)]
        assert dd.exact_hint == 2


def test_c7_property_suites(capsys):
    import subprocess
    import sys

    with criterion(capsys, "7 randomized property suites", 30):
        res = subprocess.run(
            [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(Path(__file__).parent / "test_properties.py")],
            capture_output=True,
            text=True,
        )
        assert res.returncode == 0, res.stdout[-2000:]
