"""Degree growth under iteration: Henon versus a triangular map.

Run: python3 demos/henon_growth.py
"""
from __future__ import annotations

from orbitstab import QQ, dynamical_degree, elementary, henon, point, trichotomy
from orbitstab.orbit import cyclic_orbit

maps = {
    "(y, y^2 - x)": henon(QQ, [0, 0, 1]),
    "(x, 2y + x^2)": elementary(QQ, 1, 2, [0, 0, 1]),
}
for name, phi in maps.items():
    dd = dynamical_degree(phi, 8)
    print(f"{name:<16} degrees {dd.degrees}  estimate {dd.estimate:.3f}")

# the Henon orbit is too spread out to lie on a low degree curve
orbit = cyclic_orbit(maps["(y, y^2 - x)"], point(QQ, 1, 1), 6)
print("Henon orbit closure:", trichotomy(orbit, 3).verdict)
orbit = cyclic_orbit(maps["(x, 2y + x^2)"], point(QQ, 1, 1), 6)
rep = trichotomy(orbit, 3)
print("triangular orbit closure:", rep.verdict, rep.F)
