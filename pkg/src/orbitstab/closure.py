"""Closure of an orbit window by exact interpolation of its vanishing ideal.

Nothing here certifies a Zariski closure.  A curve verdict says that the
interpolated polynomial vanishes on the whole window, that it is the same
when recomputed from half of the window, and (when generators are known)
whether each generator maps it to a scalar multiple of itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import BivarPoly, Field, monomials_up_to, poly_pullback
from .algebra.linalg import nullspace_raw, rref_raw
from .autmap import PlaneAut, Point, power
from .errors import CycleNotResolved
from .orbit import DEFAULT_BIT_CAP, DEFAULT_N, OrbitSample, cyclic_orbit, galois_saturate

DEFAULT_D = 4
DEFAULT_LMAX = 6


# -- interpolation -------------------------------------------------------------


def _eval_row(field: Field, q: Point, monos: Sequence[tuple[int, int]], D: int) -> list:
    mul, pow_ = field._mul, field._pow
    xv, yv = field.raw(q.x), field.raw(q.y)
    xs = [pow_(xv, i) for i in range(D + 1)]
    ys = [pow_(yv, j) for j in range(D + 1)]
    return [mul(xs[i], ys[j]) for i, j in monos]


def _canonical_basis(field: Field, vectors: list[list], monos) -> list[BivarPoly]:
    """Reduced echelon basis of a span, as monic polynomials sorted by leading term."""
    if not vectors:
        return []
    rows, _ = rref_raw(field, vectors, len(monos))
    polys = [BivarPoly(field, dict(zip(monos, row))) for row in rows]
    polys.sort(key=lambda f: (f.degree, f.leading_monomial[0]))
    return polys


def interpolate_ideal(points: Sequence[Point], D: int, field: str = "extension") -> list[BivarPoly]:
    """Basis of the polynomials of degree <= ``D`` vanishing on ``points``.

    ``field="extension"`` solves over the points' own field.  ``"base"``
    splits every equation into coordinates over the base field, so only
    polynomials with base-field coefficients survive.  Basis members have
    distinct leading monomials, are monic, and come sorted by leading term.
    """
    if not points:
        raise ValueError("need at least one point")
    if D < 0:
        raise ValueError("degree bound must be non-negative")
    if field not in ("base", "extension"):
        raise ValueError(f"field must be 'base' or 'extension', not {field!r}")
    K = points[0].x.field
    monos = monomials_up_to(D)
    rows = [_eval_row(K, q, monos, D) for q in points]
    if field == "base" and K.degree > 1:
        B = K.base
        split = []
        for row in rows:
            coords = [K.to_base_coords(c) for c in row]
            for k in range(K.degree):
                split.append([c[k] for c in coords])
        null = nullspace_raw(B, split, len(monos))
        null = [[K.embed(c) for c in v] for v in null]
    else:
        null = nullspace_raw(K, rows, len(monos))
    return _canonical_basis(K, null, monos)


def minimal_element(basis: Sequence[BivarPoly]) -> BivarPoly | None:
    return basis[0] if basis else None


def ideal_generators(basis: Sequence[BivarPoly], D: int) -> list[BivarPoly]:
    """Drop basis members that are combinations of monomial multiples of earlier ones."""
    if not basis:
        return []
    K = basis[0].field
    monos = monomials_up_to(D)
    col = {m: i for i, m in enumerate(monos)}

    def vec(f: BivarPoly) -> list:
        v = [K._zero] * len(monos)
        for m, c in f.raw_terms.items():
            v[col[m]] = c
        return v

    kept: list[BivarPoly] = []
    span: list[list] = []
    for f in basis:
        before = len(rref_raw(K, span, len(monos))[0]) if span else 0
        after = len(rref_raw(K, span + [vec(f)], len(monos))[0])
        if after == before:
            continue
        kept.append(f)
        for i, j in monos:
            if (i or j) and f.degree + i + j <= D:
                span.append(vec(f * BivarPoly.monomial(K, i, j)))
        span.append(vec(f))
    return kept


# -- trichotomy ---------------------------------------------------------------


@dataclass
class ClosureReport:
    verdict: str  # "finite", "curve" or "no_curve"
    degree_bound: int
    ideal_basis: list[BivarPoly]
    coefficient_field: str
    count: int | None = None
    F: BivarPoly | None = None
    stable: bool | None = None
    half_window_agrees: bool | None = None
    note: str = ""

    @property
    def is_curve(self) -> bool:
        return self.verdict == "curve"

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "degree_bound": self.degree_bound,
            "coefficient_field": self.coefficient_field,
            "ideal_basis": [str(f) for f in self.ideal_basis],
        }
        if self.verdict == "finite":
            out["count"] = self.count
        if self.F is not None:
            out["F"] = str(self.F)
            out["F_terms"] = self.F.to_json()
            out["stable"] = self.stable
            out["half_window_agrees"] = self.half_window_agrees
        if self.note:
            out["note"] = self.note
        return out


def is_stable(F: BivarPoly, phi: PlaneAut) -> bool:
    """Whether ``phi`` pulls ``F`` back to a scalar multiple of ``F``."""
    return poly_pullback(F, phi).is_associate(F)


def trichotomy(sample: OrbitSample, D: int = DEFAULT_D, field: str = "extension") -> ClosureReport:
    pts = sample.point_list()
    if sample.exhausted:
        basis = interpolate_ideal(pts, D, field)
        return ClosureReport("finite", D, basis, field, count=len(pts), note="orbit fully enumerated")
    basis = interpolate_ideal(pts, D, field)
    if not basis:
        return ClosureReport("no_curve", D, [], field, note=f"no curve of degree <= {D} detected")
    F = basis[0]
    half = sample.window(sample.bound / 2)
    half_basis = interpolate_ideal(half, D, field)
    agrees = bool(half_basis) and half_basis[0] == F
    if not agrees:
        return ClosureReport(
            "no_curve",
            D,
            basis,
            field,
            half_window_agrees=False,
            note=f"no curve of degree <= {D} detected (interpolant moved between half and full window)",
        )
    stable = all(is_stable(F, g) for g in sample.generators) if sample.generators else None
    return ClosureReport("curve", D, basis, field, F=F, stable=stable, half_window_agrees=True)


# -- hat versus bar -------------------------------------------------------------


@dataclass
class HatBar:
    bar_basis: list[BivarPoly]
    hat_basis: list[BivarPoly]
    k: int | None
    strict: bool
    cross_check: bool
    degree_bound: int

    @property
    def bar_min(self) -> BivarPoly | None:
        return minimal_element(self.bar_basis)

    @property
    def hat_min(self) -> BivarPoly | None:
        return minimal_element(self.hat_basis)

    def to_json(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "bar_basis": [str(f) for f in self.bar_basis],
            "hat_basis": [str(f) for f in self.hat_basis],
            "bar_generators": [str(f) for f in ideal_generators(self.bar_basis, self.degree_bound)],
            "hat_generators": [str(f) for f in ideal_generators(self.hat_basis, self.degree_bound)],
            "bar_min": str(self.bar_min) if self.bar_min is not None else None,
            "hat_min": str(self.hat_min) if self.hat_min is not None else None,
            "k": self.k,
            "strict": self.strict,
            "cross_check": self.cross_check,
        }


def galois_translates(F: BivarPoly) -> list[BivarPoly]:
    out: list[BivarPoly] = []
    for i in range(F.field.degree):
        g = F.galois(i).monic()
        if g not in out:
            out.append(g)
    return out


def hat_vs_bar(sample: OrbitSample | Sequence[Point], D: int = DEFAULT_D) -> HatBar:
    """Compare extension-field and base-field interpolation of the same points.

    The base side is computed twice, once by splitting coordinates and once
    by interpolating the Galois saturation over the extension; the two must
    agree (``cross_check``).
    """
    pts = sample.point_list() if isinstance(sample, OrbitSample) else list(sample)
    bar = interpolate_ideal(pts, D, "extension")
    hat = interpolate_ideal(pts, D, "base")
    sat = interpolate_ideal(galois_saturate(pts), D, "extension")
    k = len(galois_translates(bar[0])) if bar else None
    return HatBar(bar, hat, k, bar != hat, sat == hat, D)


# -- component cycle ------------------------------------------------------------


@dataclass
class ComponentCycle:
    ell: int
    k: int | None
    components: list[BivarPoly]
    witnesses: list[bool]
    power_stable: bool
    product_matches: bool | None
    closure: BivarPoly | None
    curves_by_power: dict = dc_field(default_factory=dict)
    irreducibility: str = "assumed from the cycle construction"

    @property
    def s(self) -> int | None:
        return None if self.k is None else self.k * self.ell

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "s": self.s,
            "components": [str(c) for c in self.components],
            "witnesses": self.witnesses,
            "power_stable": self.power_stable,
            "product_matches": self.product_matches,
            "closure": str(self.closure) if self.closure is not None else None,
            "curves_by_power": {str(j): (str(f) if f is not None else None) for j, f in self.curves_by_power.items()},
            "irreducibility": self.irreducibility,
        }


def component_cycle(
    phi: PlaneAut,
    p: Point,
    D: int = DEFAULT_D,
    lmax: int = DEFAULT_LMAX,
    N: int = DEFAULT_N,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> ComponentCycle:
    """Least ``l`` whose ``phi^l``-orbit closure is a stable curve that no further power splits.

    For each ``j <= lmax`` the closure ``F_j`` of the ``phi^j``-orbit is
    interpolated.  ``l`` is the least ``j`` with ``F_j`` a ``phi^j``-stable
    curve and ``F_{mj} == F_j`` for every multiple ``mj <= lmax``.
    """
    curves: dict[int, BivarPoly | None] = {}
    powers: dict[int, PlaneAut] = {}

    def curve(j: int) -> BivarPoly | None:
        if j not in curves:
            powers[j] = power(phi, j)
            rep = trichotomy(cyclic_orbit(powers[j], p, N, bit_cap), D)
            curves[j] = rep.F if rep.is_curve and rep.stable else None
        return curves[j]

    if curve(1) is None:
        raise CycleNotResolved("the orbit closure is not a detected stable curve")
    ell = None
    for j in range(1, lmax + 1):
        F = curve(j)
        if F is None:
            continue
        if all(curve(m * j) == F for m in range(2, lmax // j + 1)):
            ell = j
            break
    if ell is None:
        raise CycleNotResolved(f"cycle not resolved up to l = {lmax}")
    C1 = curves[ell]
    inv = phi.inverse()
    comps = [C1]
    for _ in range(1, ell):
        comps.append(poly_pullback(comps[-1], inv).monic())
    # pullback of C_{i+1} by phi is C_i, cyclically
    witnesses = [poly_pullback(comps[(i + 1) % ell], phi).is_associate(comps[i]) for i in range(ell)]
    full = curves.get(1)
    if full is None:
        rep = trichotomy(cyclic_orbit(phi, p, N, bit_cap), D)
        full = rep.F if rep.is_curve else None
    product_matches = None
    if full is not None:
        prod = comps[0]
        for c in comps[1:]:
            prod = prod * c
        product_matches = prod.is_associate(full)
    hb = hat_vs_bar(cyclic_orbit(powers[ell], p, N, bit_cap), D)
    return ComponentCycle(
        ell=ell,
        k=hb.k,
        components=comps,
        witnesses=witnesses,
        power_stable=is_stable(C1, powers[ell]),
        product_matches=product_matches,
        closure=full,
        curves_by_power={j: curves[j] for j in sorted(curves)},
    )
