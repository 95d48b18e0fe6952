"""Orbits on xy = 1 and the maps that preserve them.

Run: python3 demos/hyperbola_stabilizers.py
"""
from __future__ import annotations

import json
from fractions import Fraction

from orbitstab import QQ, classify_canonical, compose, cyclic_orbit_stabilizer, diagonal, orbit_stabilizer, parse_poly, point, swap

hyper = classify_canonical(parse_poly(QQ, "x*y - 1"))
p = point(QQ, 1, 1)
h = diagonal(QQ, 4, Fraction(1, 4))
g = compose(diagonal(QQ, 2, Fraction(1, 2)), swap(QQ))

for label, H in [("<(4x, y/4)>", [h]), ("<(4x, y/4), (2y, x/2)>", [h, g])]:
    st = orbit_stabilizer(hyper, p, H)
    j = st.to_json()
    print(f"H = {label}")
    print(f"  case     {j['case_tag']}")
    print(f"  torus    {j['torus_part']}")
    print(f"  coset    {j['coset']}")
    print(f"  maps     {j['generator_maps']}")

print()
st = cyclic_orbit_stabilizer(diagonal(QQ, 2, Fraction(1, 2)), p, N=20)
print("cyclic (2x, y/2) at (1,1):", st.case_tag, "relation i =", st.relation)
print(json.dumps(st.verification, indent=1, sort_keys=True))
