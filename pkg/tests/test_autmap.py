from __future__ import annotations

from fractions import Fraction

import pytest

from orbitstab.algebra import GF, QQ, BivarPoly, parse_poly, poly_pullback
from orbitstab.autmap import (
    Point,
    affine,
    apply_point,
    aut_from_json,
    compose,
    diagonal,
    elementary,
    henon,
    henon_degree,
    identity,
    invert,
    is_involution,
    make_family_element,
    point,
    power,
    swap,
)
from orbitstab.classify import classify_canonical
from orbitstab.errors import NotInGroupError, ParseError

half = Fraction(1, 2)


def expanded(phi):
    return tuple(str(f) for f in phi.expand())


def test_swap_twice_is_identity(Q):
    assert compose(swap(Q), swap(Q)).is_identity()


def test_compose_torus(Q):
    h = diagonal(Q, 2, half)
    assert compose(h, h) == diagonal(Q, 4, Fraction(1, 4))


def test_compose_sign_flip_map(Q):
    phi = elementary(Q, -1, 1, [-2, 0, 1])
    assert expanded(compose(phi, phi)) == ("x", "2*x^2 + y - 4")


def test_inverse_of_elementary(Q):
    phi = elementary(Q, 1, 3, [1, 0, 2])
    inv = invert(phi)
    assert inv == elementary(Q, 1, Fraction(1, 3), [Fraction(-1, 3), 0, Fraction(-2, 3)])
    assert compose(phi, inv).is_identity()
    assert invert(swap(Q)) == swap(Q)


def test_affine_inverse(Q):
    g = affine(Q, [[1, 2], [3, 5]], [1, -1])
    assert compose(invert(g), g).is_identity()
    assert expanded(invert(g)) == ("-5*x + 2*y + 7", "3*x - y - 4")


def test_apply_point_examples(Q, Q2):
    phi = elementary(Q2, -1, 1, [-2, 0, 1])
    s = Q2("s")
    assert apply_point(phi, Point(s, Q2(0))) == Point(-s, Q2(0))
    p = point(Q, 3, 7)
    assert identity(Q)(p) == p
    assert diagonal(Q, 4, 8)(point(Q, 1, 1)) == point(Q, 4, 8)


def test_word_composition_order(Q):
    # (phi o psi)(p) = phi(psi(p))
    phi, psi = elementary(Q, 1, 1, [0, 0, 1]), swap(Q)
    p = point(Q, 2, 5)
    assert compose(phi, psi)(p) == phi(psi(p))


def test_family_elements(Q):
    circle = classify_canonical(parse_poly(Q, "x^2 + y^2 - 1"))
    g = make_family_element(circle, ("3/5", "4/5"))
    assert g.matrix() == ((Q("3/5"), Q("-4/5")), (Q("4/5"), Q("3/5")))
    hyper = classify_canonical(parse_poly(Q, "x*y - 1"))
    assert make_family_element(hyper, 1, involution=True) == swap(Q)
    K = GF(2)
    t5 = classify_canonical(parse_poly(K, "x^2 + x*y + y^2 + 1"))
    assert make_family_element(t5, (0, 1)).matrix() == ((K(0), K(1)), (K(1), K(1)))
    with pytest.raises(NotInGroupError):
        make_family_element(circle, (1, 1))


def test_is_involution(Q):
    assert is_involution(swap(Q))
    assert not is_involution(diagonal(Q, 2, half))
    circle = classify_canonical(parse_poly(Q, "x^2 + y^2 - 1"))
    for m, n in [(2, 1), (3, 2), (4, 1), (5, 2), (7, 4)]:
        a = Fraction(m * m - n * n, m * m + n * n)
        b = Fraction(2 * m * n, m * m + n * n)
        assert is_involution(make_family_element(circle, (a, b), involution=True))


def test_henon_degrees(Q):
    phi = henon(Q, [0, 0, 1])
    assert expanded(phi) == ("y", "y^2 - x")
    assert power(phi, 3).degree == 8
    assert henon_degree(phi) == 2
    assert henon_degree(diagonal(Q, 2, 3)) is None


def test_pullback_contravariance(Q):
    F = parse_poly(Q, "x^2*y - 3*y + x")
    phi, psi = elementary(Q, 2, 1, [0, 1]), henon(Q, [1, 0, 1])
    lhs = poly_pullback(F, compose(phi, psi))
    assert lhs == poly_pullback(poly_pullback(F, phi), psi)


def test_json_roundtrip(Q2):
    phi = compose(henon(Q2, [0, "s", 1]), affine(Q2, [[1, 2], [0, 1]], ["s", 0]))
    again = aut_from_json(Q2, phi.to_json())
    assert again == phi


def test_raw_pairs_rejected(Q):
    with pytest.raises(ParseError):
        aut_from_json(Q, {"f": "x", "g": "y"})
    with pytest.raises(ParseError):
        aut_from_json(Q, [{"kind": "affine", "m": [[1, 0], [0, 0]]}])


def test_degree_bound_under_composition(Q):
    phi, psi = henon(Q, [0, 0, 1]), elementary(Q, 1, 1, [0, 0, 0, 1])
    assert compose(phi, psi).degree <= phi.degree * psi.degree
