"""A single point with an irrational coordinate, and what its closure hides.

Run: python3 demos/sqrt2_points.py
"""
from __future__ import annotations

from orbitstab import Point, QuadraticField, elementary, galois_saturate, hat_vs_bar, membership, point_set_sample
from orbitstab.closure import ideal_generators

K = QuadraticField(2)
s = K("s")

delta = point_set_sample([Point(s, K(0))])
print("Delta            :", [str(q) for q in delta.point_list()])

hat = galois_saturate(delta.point_list())
print("Galois saturation:", [str(q) for q in hat])

hb = hat_vs_bar(delta, 2)
print("ideal over Q     :", [str(f) for f in ideal_generators(hb.hat_basis, 2)])
print("ideal over Q(s)  :", [str(f) for f in ideal_generators(hb.bar_basis, 2)])

# (-x, y + x^2 - 2) swaps the two conjugates but moves Delta itself
phi = elementary(K, -1, 1, [-2, 0, 1])
print("phi(Delta)       :", [str(phi(q)) for q in delta.point_list()])
print("phi on Delta     :", membership(phi, delta).verdict)
print("phi on saturation:", membership(phi, point_set_sample(hat)).verdict)
