from __future__ import annotations

from fractions import Fraction

import pytest

from orbitstab.algebra import GF, QQ, parse_poly
from orbitstab.autmap import compose, diagonal, elementary, henon, point, power, swap
from orbitstab.classify import Torus, classify_canonical
from orbitstab.errors import HypothesisError, NotInGroupError, SizeLimitError
from orbitstab.orbit import cyclic_orbit, group_orbit
from orbitstab.stabilizer import (
    RationalLattice,
    cyclic_orbit_stabilizer,
    dynamical_degree,
    isotropy,
    membership,
    orbit_stabilizer,
    subgroup_contains,
    subgroup_normal_form,
)

HYP = diagonal(QQ, 2, Fraction(1, 2))


def t3():
    return classify_canonical(parse_poly(QQ, "x*y - 1"))


def test_lattice():
    lat = RationalLattice([Fraction(4), Fraction(2)])
    assert lat.reduced() == [Fraction(2)]
    assert Fraction(1, 8) in lat and Fraction(3) not in lat and Fraction(-2) not in lat
    lat = RationalLattice([Fraction(-1)])
    assert Fraction(-1) in lat and Fraction(1) in lat and Fraction(2) not in lat


def test_subgroup_contains_finite():
    d = classify_canonical(parse_poly(GF(7), "x*y - 1"))
    tor = Torus(d)
    assert subgroup_contains(tor, [GF(7)(2)], GF(7)(4))[0] is True
    assert subgroup_contains(tor, [GF(7)(2)], GF(7)(3))[0] is False


def test_normal_form_sigma_alone():
    h = subgroup_normal_form([swap(QQ)], t3(), point(QQ, 1, 1))
    assert h.h0_gens == [] and h.t0_is_identity and h.t0_in_h0


def test_normal_form_rejects_outsider():
    with pytest.raises(NotInGroupError):
        subgroup_normal_form([diagonal(QQ, 2, 2)], t3(), point(QQ, 1, 1))


def test_h0_extended():
    st = orbit_stabilizer(t3(), point(QQ, 1, 1), [diagonal(QQ, 4, Fraction(1, 4))])
    j = st.to_json()
    assert j["case_tag"] == "H0_extended_by_Gp"
    assert j["torus_part"] == ["4"] and j["coset"]["t1"] == "1"
    assert st.verification["passed"] and st.complete


def test_index_two_extension():
    g = compose(HYP, swap(QQ))
    st = orbit_stabilizer(t3(), point(QQ, 1, 1), [diagonal(QQ, 4, Fraction(1, 4)), g])
    j = st.to_json()
    assert j["case_tag"] == "A0_index2_extension" and j["index_A0_over_H0"] == 2
    assert j["torus_part"] == ["2"] and j["coset"]["t1"] == "2"


def test_h_unchanged_when_t0_in_h0():
    g = compose(diagonal(QQ, 4, Fraction(1, 4)), swap(QQ))
    st = orbit_stabilizer(t3(), point(QQ, 1, 1), [diagonal(QQ, 4, Fraction(1, 4)), g])
    assert st.case_tag == "H_unchanged"


def test_h_unchanged_t0_outside():
    g = compose(diagonal(QQ, 3, Fraction(1, 3)), swap(QQ))
    st = orbit_stabilizer(t3(), point(QQ, 1, 1), [diagonal(QQ, 4, Fraction(1, 4)), g])
    assert st.case_tag == "H_unchanged" and st.to_json()["coset"]["t1"] == "3"


def test_equals_h_on_cusp():
    d = classify_canonical(parse_poly(QQ, "x^3 - y^2"))
    st = orbit_stabilizer(d, point(QQ, 1, 1), [diagonal(QQ, 4, 8)])
    assert st.case_tag == "A_equals_H" and st.to_json()["torus_part"] == ["2"]


def test_line_lower_bound():
    d = classify_canonical(parse_poly(QQ, "x"))
    st = orbit_stabilizer(d, point(QQ, 0, 0), [elementary(QQ, 1, 2, [1])])
    assert st.case_tag == "Type6_lower_bound" and not st.complete


def test_hypothesis_errors():
    with pytest.raises(HypothesisError):
        orbit_stabilizer(t3(), point(QQ, 1, 1), [])
    with pytest.raises(HypothesisError):
        orbit_stabilizer(classify_canonical(parse_poly(QQ, "x^2 - 1")), point(QQ, 1, 0), [])
    with pytest.raises(HypothesisError):
        orbit_stabilizer(t3(), point(QQ, 2, 2), [HYP])


def test_isotropy_t3_and_t4():
    rep = isotropy(t3(), point(QQ, 2, Fraction(1, 2)))
    assert len(rep.elements) == 2
    for g in rep.elements:
        assert g(point(QQ, 2, Fraction(1, 2))) == point(QQ, 2, Fraction(1, 2))
    d = classify_canonical(parse_poly(QQ, "x^2 + y^2 - 1"))
    assert [str(g) for g in isotropy(d, point(QQ, 1, 0)).elements][0] != ""


def test_cyclic_hyperbola_relation():
    st = cyclic_orbit_stabilizer(HYP, point(QQ, 1, 1), N=10)
    assert st.case_tag == "Cyclic_b_i" and st.relation == -1
    assert st.verification["conjugation_checked"]
    orbit = cyclic_orbit(HYP, point(QQ, 1, 1), 10)
    assert membership(swap(QQ), orbit, st).verdict == "in"


def test_cyclic_cusp():
    st = cyclic_orbit_stabilizer(diagonal(QQ, 4, 8), point(QQ, 1, 1), N=10)
    assert st.case_tag == "Cyclic_a" and st.complete


def test_cyclic_fence():
    phi = elementary(QQ, 1, 2, [-1, 1])
    st = cyclic_orbit_stabilizer(phi, point(QQ, 1, 1), N=10)
    assert st.case_tag == "Cyclic_c" and not st.complete
    assert st.kernel_part["b"] == "2"
    orbit = cyclic_orbit(phi, point(QQ, 1, 1), 10)
    assert membership(elementary(QQ, 1, 1, [1, -2, 1]), orbit, st).verdict == "in"


def test_cyclic_two_components():
    st = cyclic_orbit_stabilizer(elementary(QQ, -1, 2, [-1, 0, 1]), point(QQ, 1, 1), N=8)
    assert st.ell == 2 and not st.complete and st.notes


def test_cyclic_rejects_dense_and_finite():
    with pytest.raises(HypothesisError):
        cyclic_orbit_stabilizer(henon(QQ, [0, 0, 1]), point(QQ, 1, 1), N=6)
    with pytest.raises(HypothesisError):
        cyclic_orbit_stabilizer(diagonal(QQ, -1, 1), point(QQ, 1, 1))


def test_membership_line():
    phi = elementary(QQ, 1, 2, [1])
    orbit = cyclic_orbit(phi, point(QQ, 0, 0), 10)
    st = cyclic_orbit_stabilizer(phi, point(QQ, 0, 0), N=10)
    assert membership(diagonal(QQ, 3, 1), orbit, st).verdict == "in"
    assert membership(diagonal(QQ, 3, 3), orbit, st).verdict == "out"
    assert membership(diagonal(QQ, 1, 2), orbit).verdict == "out"


def test_membership_proper_image():
    # y -> 2y sends the integers into the even integers
    orbit = cyclic_orbit(elementary(QQ, 1, 1, [1]), point(QQ, 0, 0), 10)
    r = membership(diagonal(QQ, 1, 2), orbit)
    assert r.verdict == "verified_up_to_bound"
    assert "image is proper subset of window" in r.flags


def test_membership_exhausted():
    K = GF(5)
    orbit = group_orbit([diagonal(K, 2, 3)], point(K, 1, 1), 10)
    assert membership(diagonal(K, 4, 4), orbit).verdict == "in"
    assert membership(diagonal(K, 2, 2), orbit).verdict == "out"


def test_closure_invariant_case_b_i():
    # every window point lies on C1 and tau_p phi = phi^i tau_p
    st = cyclic_orbit_stabilizer(HYP, point(QQ, 2, Fraction(1, 2)), N=8)
    tau = st.generators[1]
    i = st.relation
    for n in range(-3, 4):
        assert compose(tau, power(HYP, n)) == compose(power(HYP, i * n), tau)


def test_dichotomy_b():
    # (3x, y/3) and the flip at (1,1) satisfy a relation, the flip at (2,1/2) also
    for p in [point(QQ, 1, 1), point(QQ, 3, Fraction(1, 3))]:
        st = cyclic_orbit_stabilizer(diagonal(QQ, 3, Fraction(1, 3)), p, N=8)
        assert st.case_tag in ("Cyclic_b_i", "Cyclic_b_ii")
        if st.case_tag == "Cyclic_b_i":
            assert st.verification["conjugation_checked"]


def test_dynamical_degree():
    dd = dynamical_degree(henon(QQ, [0, 0, 1]), 6)
    assert dd.degrees == [2, 4, 8, 16, 32, 64] and dd.exact_hint == 2
    dd = dynamical_degree(HYP, 4)
    assert dd.degrees == [1, 1, 1, 1] and dd.estimate == 1.0
    dd = dynamical_degree(elementary(QQ, 1, 1, [0, 0, 1]), 3)
    assert dd.degrees == [2, 2, 2]
    with pytest.raises(SizeLimitError):
        dynamical_degree(henon(QQ, [1, 0, 1]), 12, bit_cap=256)
    with pytest.raises(ValueError):
        dynamical_degree(HYP, 0)


@pytest.mark.parametrize(
    "a,n,verdict,flagged",
    [(3, 1, "in", False), (3, -1, "verified_up_to_bound", False), (5, 2, "verified_up_to_bound", True)],
)
def test_translation_orbit_scalings(a, n, verdict, flagged):
    phi = elementary(QQ, 1, 1, [1])
    orbit = cyclic_orbit(phi, point(QQ, 0, 0), 10)
    st = cyclic_orbit_stabilizer(phi, point(QQ, 0, 0), N=10)
    r = membership(diagonal(QQ, a, n), orbit, st)
    assert r.verdict == verdict
    assert ("image is proper subset of window" in r.flags) == flagged
