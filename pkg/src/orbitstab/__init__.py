"""Orbits of plane automorphisms, their closures and stabilizers."""

from .algebra import GF, QQ, BivarPoly, QuadraticField, parse_poly
from .autmap import (
    PlaneAut,
    Point,
    affine,
    apply_point,
    compose,
    diagonal,
    elementary,
    henon,
    identity,
    invert,
    linear,
    point,
    power,
    swap,
    translation,
)
from .classify import CurveDescriptor, Torus, algebraicity, classify_canonical, symmetry_group
from .closure import component_cycle, hat_vs_bar, interpolate_ideal, trichotomy
from .errors import CycleNotResolved, HypothesisError, NotInGroupError, OrbitStabError, ParseError, SizeLimitError
from .oracle import brute_stabilizer, enumerate_G, verify_theorem_grid
from .orbit import cyclic_orbit, galois_saturate, group_orbit, point_set_sample
from .stabilizer import (
    cyclic_orbit_stabilizer,
    dynamical_degree,
    isotropy,
    membership,
    orbit_stabilizer,
    subgroup_normal_form,
)

__version__ = "0.1.0"
