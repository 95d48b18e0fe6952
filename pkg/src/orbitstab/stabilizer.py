"""Isotropy groups and stabilizers of orbits lying on canonical curves.

Group elements of a T1-T5 symmetry group are handled as torus parameters
plus a flip bit (see :class:`orbitstab.classify.Torus`).  Subgroup
membership in the torus is exact over finite fields (enumeration) and for
rational parameters of the split tori (lattice of prime exponents);
everything else falls back to a bounded search whose bound is reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import BivarPoly, FieldElem, QuadraticField, Rationals, poly_pullback
from .autmap import PlaneAut, Point, compose, elementary, henon_degree, identity, is_involution, power
from .classify import CurveDescriptor, Torus, _fmt, classify_canonical
from .closure import DEFAULT_D, DEFAULT_LMAX, component_cycle, is_stable, trichotomy
from .errors import HypothesisError, NotInGroupError, SizeLimitError
from .orbit import DEFAULT_BIT_CAP, DEFAULT_L, DEFAULT_N, OrbitSample, cyclic_orbit, group_orbit

SEARCH_BUDGET = 20000


# -- isotropy ----------------------------------------------------------------------


@dataclass
class IsotropyReport:
    kind: str
    point: Point
    elements: list[PlaneAut]
    params: list[dict]
    family: str | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "type": self.kind,
            "point": self.point.to_json(),
            "elements": [g.to_json() for g in self.elements],
            "maps": [str(g) for g in self.elements],
            "params": self.params,
        }
        if self.family:
            out["family"] = self.family
        if self.note:
            out["note"] = self.note
        return out


def _check_on_curve(desc: CurveDescriptor, p: Point) -> None:
    if desc.F.evaluate(p.x, p.y):
        raise HypothesisError(f"point {p} is not on the curve {desc.F} = 0")


def _verified(desc: CurveDescriptor, p: Point, g: PlaneAut) -> PlaneAut:
    if g(p) != p:
        raise AssertionError(f"isotropy element {g} does not fix {p}")
    if not is_stable(desc.F, g):
        raise AssertionError(f"isotropy element {g} does not preserve {desc.F}")
    return g


def isotropy(desc: CurveDescriptor, p: Point) -> IsotropyReport:
    """Elements of the curve's symmetry group fixing ``p``."""
    _check_on_curve(desc, p)
    K = desc.field
    one = identity(K)
    kind = desc.kind
    if kind in ("T1", "T2"):
        if not p.x and not p.y:
            return IsotropyReport(
                kind, p, [one], [], family="the whole torus", note="every torus element fixes the origin"
            )
        return IsotropyReport(kind, p, [one], [])
    if kind in ("T3", "T4", "T5"):
        tor = Torus(desc)
        t = tor.isotropy_param(p)
        g = _verified(desc, p, tor.element(t, True))
        return IsotropyReport(kind, p, [one, g], [{"t": _fmt(t), "involution": True}])
    if kind in ("T6", "Fence"):
        yp = p.y
        samples = [elementary(K, 1, 1, [0, 1])]
        extra = next((c for c in K.nonzero_elements() if c != 1), None) if K.is_finite else K(2)
        if extra is not None and extra:
            # P(0) = (1 - b) y_p keeps p fixed
            samples.append(elementary(K, extra, extra, [(1 - extra) * yp, 0, 1]))
        if kind == "Fence":
            fence = desc.params["P"]
            samples = [elementary(K, 1, 1, fence)]
            family = "{(al x + be, ga y + Q(x)) : al x_p + be = x_p, ga y_p + Q(x_p) = y_p, F(al x + be) ~ F(x)}"
        else:
            family = "{(a x, b y + P(x)) : a, b != 0, P(0) = (1 - b) y_p}"
        els = [one] + [_verified(desc, p, g) for g in samples]
        return IsotropyReport(kind, p, els, [], family=family, note="sample members of an infinite family")
    raise ValueError(f"isotropy is not computed for curves of type {kind}")


# -- torus subgroups ----------------------------------------------------------------


def _as_fraction(t: Any) -> Fraction | None:
    if not isinstance(t, FieldElem):
        return None
    f = t.field
    if isinstance(f, Rationals) or (isinstance(f, QuadraticField) and t.in_base()):
        return t.to_fraction()
    return None


def _factor(n: int) -> dict[int, int]:
    from sympy import factorint

    return {int(p): int(e) for p, e in factorint(n).items()}


def _exponents(q: Fraction) -> dict:
    out: dict = {}
    for p, e in _factor(abs(q.numerator)).items():
        out[p] = out.get(p, 0) + e
    for p, e in _factor(q.denominator).items():
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e and p > 1}


def _echelon(rows: list[list[int]], ncols: int) -> list[list[int]]:
    rows = [r[:] for r in rows if any(r)]
    out = []
    for col in range(ncols):
        nz = [r for r in rows if r[col]]
        if not nz:
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r[:] = [a - q * b for a, b in zip(r, piv)]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-a for a in piv]
        out.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
    return out


class RationalLattice:
    """A finitely generated subgroup of Q* as a lattice of (sign, prime exponents)."""

    def __init__(self, gens: Sequence[Fraction]):
        self.gens = [Fraction(g) for g in gens]
        primes = set()
        for g in self.gens:
            primes |= set(_exponents(g))
        self.primes = sorted(primes)
        n = 1 + len(self.primes)
        rows = [self._vec(g) for g in self.gens] + [[2] + [0] * len(self.primes)]
        self.basis = _echelon(rows, n)

    def _vec(self, q: Fraction) -> list[int]:
        ex = _exponents(q)
        return [1 if q < 0 else 0] + [ex.get(p, 0) for p in self.primes]

    def __contains__(self, q: Fraction) -> bool:
        q = Fraction(q)
        if not q:
            return False
        if set(_exponents(q)) - set(self.primes):
            return False
        v = self._vec(q)
        for row in self.basis:
            c = next(i for i, a in enumerate(row) if a)
            if v[c] % row[c]:
                return False
            m = v[c] // row[c]
            v = [a - m * b for a, b in zip(v, row)]
        return not any(v)

    def reduced(self) -> list[Fraction]:
        out = []
        for row in self.basis:
            val = Fraction(-1 if row[0] % 2 else 1)
            for p, e in zip(self.primes, row[1:]):
                val *= Fraction(p) ** e
            if val != 1:
                out.append(val)
        return out


def generated_subgroup(tor: Torus, gens: Sequence) -> dict:
    """All elements of ``<gens>`` in a finite torus, keyed by :meth:`Torus.key`."""
    one = tor.one()
    seen = {tor.key(one): one}
    frontier = [one]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                r = tor.mul(s, g)
                k = tor.key(r)
                if k not in seen:
                    seen[k] = r
                    nxt.append(r)
        frontier = nxt
    return seen


def _bounded_search(tor: Torus, gens: Sequence, t, bound: int) -> tuple[bool | None, int]:
    if not gens:
        return (True if tor.is_one(t) else None), 0
    B = bound
    while B > 1 and (2 * B + 1) ** len(gens) > SEARCH_BUDGET:
        B //= 2
    tables = [{e: tor.pow(g, e) for e in range(-B, B + 1)} for g in gens]
    target = tor.key(t)
    for combo in itertools.product(range(-B, B + 1), repeat=len(gens)):
        s = tor.one()
        for tab, e in zip(tables, combo):
            s = tor.mul(s, tab[e])
        if tor.key(s) == target:
            return True, B
    return None, B


def subgroup_contains(tor: Torus, gens: Sequence, t, bound: int = 2 * DEFAULT_N) -> tuple[bool | None, str]:
    """Decide ``t in <gens>``; ``None`` means undecided within the search bound."""
    if tor.desc.ground.is_finite:
        return tor.key(t) in {k for k in generated_subgroup(tor, gens)}, "enumeration"
    if tor.kind in ("T1", "T2", "T3"):
        fr = [_as_fraction(g) for g in gens]
        ft = _as_fraction(t)
        if ft is not None and all(f is not None for f in fr):
            return ft in RationalLattice(fr), "prime-exponent lattice"
    found, B = _bounded_search(tor, gens, t, bound)
    return found, f"bounded search |e| <= {B}" + ("" if found else ", undecided beyond bound")


def reduced_generators(tor: Torus, gens: Sequence) -> list:
    """A shorter generating list for ``<gens>`` when it can be computed exactly."""
    if tor.desc.ground.is_finite:
        els = generated_subgroup(tor, gens)
        if len(els) == 1:
            return []
        best = max(els.values(), key=tor.order)
        return [best]
    if tor.kind in ("T1", "T2", "T3"):
        fr = [_as_fraction(g) for g in gens]
        if all(f is not None for f in fr):
            return [tor.field(q) for q in RationalLattice(fr).reduced()]
    return [g for g in gens if not tor.is_one(g)]


# -- normal form of H --------------------------------------------------------------


@dataclass
class HDescriptor:
    torus: Torus
    point: Point
    h0_gens: list
    tau_param: Any
    t0: Any = None
    t0_in_h0: bool | None = None
    t0_sq_in_h0: bool | None = None
    method: str = ""
    bound: int = 0
    input_gens: list = dc_field(default_factory=list)

    @property
    def has_coset(self) -> bool:
        return self.t0 is not None

    @property
    def t0_is_identity(self) -> bool:
        return self.has_coset and self.torus.is_one(self.t0)

    def generators(self) -> list[PlaneAut]:
        """H as plane automorphisms: torus generators then the coset representative."""
        tor = self.torus
        out = [tor.element(h) for h in self.h0_gens]
        if self.has_coset:
            out.append(tor.element(tor.mul(self.t0, self.tau_param), True))
        return out

    def to_json(self) -> dict:
        out = {
            "type": self.torus.kind,
            "H0": [_fmt(h) for h in self.h0_gens],
            "coset": None,
        }
        if self.has_coset:
            out["coset"] = {
                "t0": _fmt(self.t0),
                "tau_p": _fmt(self.tau_param),
                "t0_is_identity": self.t0_is_identity,
                "t0_in_H0": self.t0_in_h0,
                "t0_squared_in_H0": self.t0_sq_in_h0,
                "method": self.method,
            }
        return out


def subgroup_normal_form(gens: Sequence, desc: CurveDescriptor, p: Point, bound: int = 2 * DEFAULT_N) -> HDescriptor:
    """Split ``H = <gens>`` as ``H0`` or ``H0 u H0 t0 tau_p``.

    ``gens`` are plane automorphisms (or ``(param, flip)`` pairs) lying in
    the symmetry group of ``desc``.  Anything outside it is rejected.
    """
    tor = Torus(desc)
    parts = []
    for g in gens:
        if isinstance(g, PlaneAut):
            parts.append(tor.decompose(g))
        else:
            t, flip = g
            if not tor.valid(t) or (flip and not tor.has_flip):
                raise NotInGroupError(f"{g} is not an element of the {desc.kind} group")
            parts.append((t, bool(flip)))
    torus_gens = [t for t, f in parts if not f and not tor.is_one(t)]
    coset = [t for t, f in parts if f]
    if coset:
        c1 = coset[0]
        # gamma_1 gamma_j = (c1 c_j^-1, no flip)
        torus_gens += [tor.mul(c1, tor.inv(c)) for c in coset[1:]]
        torus_gens = [t for t in torus_gens if not tor.is_one(t)]
    h = HDescriptor(tor, p, torus_gens, None, bound=bound, input_gens=list(parts))
    if tor.has_flip:
        h.tau_param = tor.isotropy_param(p)
    if coset:
        h.t0 = tor.mul(coset[0], tor.inv(h.tau_param))
        h.t0_in_h0, m1 = subgroup_contains(tor, torus_gens, h.t0, bound)
        h.t0_sq_in_h0, m2 = subgroup_contains(tor, torus_gens, tor.mul(h.t0, h.t0), bound)
        h.method = m1 if m1 == m2 else f"{m1}; {m2}"
        rep = tor.element(coset[0], True)
        if not is_involution(rep):
            raise AssertionError(f"coset representative {rep} is not an involution")
    return h


# -- stabilizer descriptors --------------------------------------------------------------


@dataclass
class StabilizerDescriptor:
    case_tag: str
    curve: CurveDescriptor
    point: Point
    torus_part: list
    coset: Any = None  # torus parameter t1 with coset A0 t1 tau_p
    tau_param: Any = None
    kernel_part: dict | None = None
    complete: bool = True
    countability: str = "countably infinite"
    verification: dict = dc_field(default_factory=dict)
    bounds: dict = dc_field(default_factory=dict)
    notes: list[str] = dc_field(default_factory=list)
    index: int | None = None
    driver: PlaneAut | None = None
    relation: int | None = None
    ell: int = 1
    generators: list[PlaneAut] = dc_field(default_factory=list)
    membership_exact: bool = True
    _torus: Torus | None = dc_field(default=None, repr=False)

    @property
    def is_algebraic(self) -> bool:
        from .classify import algebraicity

        return algebraicity(self)["is_algebraic"]

    def to_json(self) -> dict:
        out = {
            "case_tag": self.case_tag,
            "curve": str(self.curve.F),
            "curve_type": self.curve.kind,
            "point": self.point.to_json(),
            "torus_part": [_fmt(t) for t in self.torus_part],
            "coset": None if self.coset is None else {"t1": _fmt(self.coset), "tau_p": _fmt(self.tau_param)},
            "generators": [g.to_json() for g in self.generators],
            "generator_maps": [str(g) for g in self.generators],
            "complete": self.complete,
            "is_algebraic": self.is_algebraic,
            "countability": self.countability,
            "verification": self.verification,
            "bounds": self.bounds,
        }
        if self.index is not None:
            out["index_A0_over_H0"] = self.index
        if self.kernel_part is not None:
            out["kernel_part"] = self.kernel_part
        if self.relation is not None:
            out["relation_i"] = self.relation
        if self.ell != 1:
            out["ell"] = self.ell
        if self.notes:
            out["notes"] = self.notes
        return out

    # membership in the described group
    def decide(self, psi: PlaneAut, sample: OrbitSample | None = None) -> tuple[bool | None, str]:
        """``True``/``False`` when the descriptor settles membership of ``psi``; ``None`` otherwise."""
        if self.case_tag.startswith("Cyclic"):
            return self._decide_cyclic(psi, sample)
        if self.kernel_part is not None:
            return self._decide_lower_bound(psi, sample)
        tor = self._torus
        try:
            t, flip = tor.decompose(psi)
        except NotInGroupError:
            return False, "not in the symmetry group of the curve"
        if flip:
            if self.coset is None:
                return False, "involution coset is not in A"
            t = tor.mul(t, tor.inv(tor.mul(self.coset, self.tau_param)))
        got, how = subgroup_contains(tor, self.torus_part, t, self.bounds.get("search", 2 * DEFAULT_N))
        if got is None:
            return None, how
        if not got:
            return (False, how) if self.complete and self.membership_exact else (None, how)
        return True, how

    def _decide_cyclic(self, psi: PlaneAut, sample: OrbitSample | None) -> tuple[bool | None, str]:
        phi, p = self.driver, self.point
        n = _find_exponent(phi, p, psi(p), self.bounds.get("N", DEFAULT_N), sample)
        if self.kernel_part is not None:
            return self._decide_lower_bound(psi, sample)
        if n is None:
            return (None, "image of p not found in the window")
        phin = power(phi, n)
        if phin == psi:
            return True, f"psi = phi^{n}"
        if self.tau_param is not None and self.coset is not None:
            tau = self._torus.element(self.tau_param, True)
            if compose(phin, tau) == psi:
                return True, f"psi = phi^{n} tau_p"
        if self.complete:
            return False, f"psi(p) = phi^{n}(p) but psi is neither phi^{n} nor phi^{n} tau_p"
        return None, "descriptor incomplete"

    def _decide_lower_bound(self, psi: PlaneAut, sample: OrbitSample | None) -> tuple[bool | None, str]:
        """Certify ``psi`` in the lower bound: for each i < l, phi^-j psi phi^i fixes C1 pointwise."""
        C1 = self.curve.F
        gens = [self.driver] if self.driver is not None else self.generators
        if len(gens) != 1:
            return None, "lower-bound test needs a single driving automorphism"
        phi, p = gens[0], self.point
        N = self.bounds.get("N", DEFAULT_N)
        for i in range(self.ell):
            q = power(phi, i)(p)
            n = _find_exponent(phi, p, psi(q), N, sample)
            if n is None:
                return None, "image of an orbit point not found in the window"
            j = n - i
            cand = compose(compose(power(phi, -j), psi), power(phi, i))
            if not _fixes_pointwise(cand, C1):
                return None, f"phi^{-j} psi phi^{i} does not fix C1 pointwise"
        return True, "psi lies in <phi> Ker(R) (restricts to the identity on C1 up to a power of phi)"


def _fixes_pointwise(g: PlaneAut, F: BivarPoly) -> bool:
    """Whether ``g`` restricts to the identity on ``V(F)`` (``F`` reduced)."""
    f, h = g.expand()
    K = F.field
    for comp, var in ((f, BivarPoly.x(K)), (h, BivarPoly.y(K))):
        diff = comp - var
        if diff and diff.exact_divide(F) is None:
            return False
    return True


def _find_exponent(phi: PlaneAut, p: Point, q: Point, N: int, sample: OrbitSample | None = None) -> int | None:
    if sample is not None and sample.mode == "cyclic" and sample.generators[0] is phi:
        lab = sample.label_of(q)
        if lab is not None:
            return lab[0][1] if lab else 0
    win = cyclic_orbit(phi, p, 2 * N)
    lab = win.label_of(q)
    if lab is None:
        return None
    return lab[0][1] if lab else 0


def _window_check(elements: Sequence[PlaneAut], sample: OrbitSample) -> dict:
    lookup = set(sample.point_list())
    middle = sample.window(sample.bound / 2)
    failures = []
    checks = 0
    for g in elements:
        for h, tag in ((g, str(g)), (g.inverse(), f"({g})^-1")):
            for q in middle:
                checks += 1
                if h(q) not in lookup:
                    failures.append({"map": tag, "point": q.to_json()})
                    break
    return {
        "window": len(lookup),
        "middle": len(middle),
        "checks": checks,
        "passed": not failures,
        "failures": failures,
    }


def _hypothesis(desc: CurveDescriptor, sample: OrbitSample, D: int) -> None:
    if sample.exhausted:
        raise HypothesisError("theorem hypothesis not met: the orbit is finite")
    rep = trichotomy(sample, D)
    if not rep.is_curve:
        raise HypothesisError(f"theorem hypothesis not met: no curve of degree <= {D} through the orbit window")
    if rep.F != desc.F.monic():
        raise HypothesisError(f"theorem hypothesis not met: orbit closure {rep.F} differs from {desc.F}")


def orbit_stabilizer(
    desc: CurveDescriptor,
    p: Point,
    H: HDescriptor | Sequence[PlaneAut],
    L: int = DEFAULT_L,
    D: int = DEFAULT_D,
    check_hypothesis: bool = True,
) -> StabilizerDescriptor:
    """Stabilizer of the orbit of ``p`` under ``H`` (case analysis for irreducible curve closures)."""
    kind = desc.kind
    _check_on_curve(desc, p)
    K = desc.field
    if kind in ("T6", "Fence"):
        gens = list(H) if not isinstance(H, HDescriptor) else H.generators()
        if kind == "Fence" and desc.F.degree != 1:
            raise HypothesisError("theorem hypothesis not met: a fence of degree > 1 is not irreducible")
        sample = group_orbit(gens, p, L)
        if check_hypothesis:
            _hypothesis(desc, sample, D)
        return StabilizerDescriptor(
            "Type6_lower_bound",
            desc,
            p,
            [],
            kernel_part={
                "lower_bound": "H Ker(R) is contained in A",
                "formula": "A = H (G_p n A)",
                "G_p": isotropy(desc, p).family,
                "Ker(R)": "automorphisms preserving the line and restricting to the identity on it",
            },
            complete=False,
            generators=gens,
            driver=gens[0] if len(gens) == 1 else None,
            verification=_window_check(gens, sample),
            bounds={"L": L, "D": D, "N": L},
            notes=["only the lower bound H Ker(R) is certified; membership beyond it is semidecided on windows"],
        )
    if kind not in ("T1", "T2", "T3", "T4", "T5"):
        raise HypothesisError(f"theorem hypothesis not met: curve of type {kind}")
    h = H if isinstance(H, HDescriptor) else subgroup_normal_form(H, desc, p)
    tor = h.torus
    finite = desc.ground.is_finite
    count = "finite" if finite else "countably infinite"
    gens_H = h.generators()
    sample = None
    if check_hypothesis:
        if not gens_H:
            raise HypothesisError("theorem hypothesis not met: H is trivial, the orbit is a point")
        sample = group_orbit(gens_H, p, L)
        _hypothesis(desc, sample, D)
    bounds = {"L": L, "D": D, "search": h.bound}
    exact = "undecided" not in h.method
    common = dict(curve=desc, point=p, countability=count, bounds=bounds, _torus=tor, tau_param=h.tau_param)
    if kind in ("T1", "T2"):
        st = StabilizerDescriptor("A_equals_H", torus_part=reduced_generators(tor, h.h0_gens), **common)
    elif not h.has_coset:
        st = StabilizerDescriptor(
            "H0_extended_by_Gp", torus_part=reduced_generators(tor, h.h0_gens), coset=tor.one(), **common
        )
    elif h.t0_in_h0:
        st = StabilizerDescriptor(
            "H_unchanged", torus_part=reduced_generators(tor, h.h0_gens), coset=tor.one(), **common
        )
    elif h.t0_sq_in_h0:
        a0 = reduced_generators(tor, list(h.h0_gens) + [h.t0])
        st = StabilizerDescriptor("A0_index2_extension", torus_part=a0, coset=h.t0, index=2, **common)
    else:
        st = StabilizerDescriptor("H_unchanged", torus_part=reduced_generators(tor, h.h0_gens), coset=h.t0, **common)
        if h.t0_sq_in_h0 is None:
            st.notes.append("t0^2 in H0 undecided within the search bound")
    st.membership_exact = exact and h.t0_in_h0 is not None and h.t0_sq_in_h0 is not None if h.has_coset else exact
    st.generators = [tor.element(t) for t in st.torus_part]
    if st.coset is not None:
        st.generators.append(tor.element(tor.mul(st.coset, h.tau_param), True))
    st.verification = _window_check(st.generators, sample) if sample is not None else {"skipped": "closure check disabled"}
    return st


# -- cyclic groups ------------------------------------------------------------------


def cyclic_orbit_stabilizer(
    phi: PlaneAut,
    p: Point,
    N: int = DEFAULT_N,
    D: int = DEFAULT_D,
    lmax: int = DEFAULT_LMAX,
    I: int | None = None,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> StabilizerDescriptor:
    """Stabilizer of the orbit of ``p`` under ``<phi>`` when its closure is a curve."""
    I = 2 * N if I is None else I
    sample = cyclic_orbit(phi, p, N, bit_cap)
    if sample.exhausted:
        raise HypothesisError("theorem hypothesis not met: the orbit is finite")
    rep = trichotomy(sample, D)
    if not rep.is_curve:
        raise HypothesisError(f"theorem hypothesis not met: no curve of degree <= {D} through the orbit window")
    cc = component_cycle(phi, p, D, lmax, N, bit_cap)
    C1 = cc.components[0]
    desc = classify_canonical(C1)
    bounds = {"N": N, "D": D, "lmax": lmax, "I": I}
    base = dict(curve=desc, point=p, driver=phi, ell=cc.ell, bounds=bounds)
    notes = []
    if cc.ell > 1:
        notes.append(f"closure has {cc.ell} components; only bounded verification is attempted")
    kind = desc.kind
    if kind in ("T1", "T2"):
        if not p.x and not p.y:
            raise HypothesisError("theorem hypothesis not met: p is the origin")
        st = StabilizerDescriptor("Cyclic_a", torus_part=[], generators=[phi], complete=cc.ell == 1, **base)
    elif kind in ("T3", "T4", "T5"):
        tor = Torus(desc)
        tp = tor.isotropy_param(p)
        tau = tor.element(tp, True)
        i = _relation_search(phi, tau, I)
        if i is not None:
            st = StabilizerDescriptor(
                "Cyclic_b_i",
                torus_part=[],
                generators=[phi, tau],
                coset=tor.one(),
                tau_param=tp,
                relation=i,
                complete=cc.ell == 1,
                _torus=tor,
                **base,
            )
            st.verification["conjugation_checked"] = _conjugation_check(phi, tau, i)
        else:
            st = StabilizerDescriptor(
                "Cyclic_b_ii", torus_part=[], generators=[phi], tau_param=tp, complete=cc.ell == 1, _torus=tor, **base
            )
            notes.append(f"no relation tau_p phi = phi^i tau_p with |i| <= {I}")
    elif kind in ("T6", "Fence"):
        st = StabilizerDescriptor(
            "Cyclic_c",
            torus_part=[],
            generators=[phi],
            complete=False,
            kernel_part=_cyclic_kernel_data(phi, p, cc.ell, desc),
            **base,
        )
        notes.append("only the lower bound <phi> Ker(R) (intersected over the cycle) is certified")
    else:
        raise HypothesisError(f"theorem hypothesis not met: component {C1} is not in canonical form")
    st.notes.extend(notes)
    st.verification.update(_window_check(st.generators, sample))
    st.verification["components"] = [str(c) for c in cc.components]
    return st


def _relation_search(phi: PlaneAut, tau: PlaneAut, I: int) -> int | None:
    """Least ``|i| <= I`` (0, -1, 1, -2, ...) with ``tau phi == phi^i tau``."""
    lhs = compose(tau, phi).expand()
    target_deg = max(lhs[0].degree, lhs[1].degree)
    pos = {0: identity(phi.field)}
    neg = {0: identity(phi.field)}
    inv = phi.inverse()
    cap = max(8, 4 * target_deg)
    dead = {1: False, -1: False}
    for k in range(0, I + 1):
        for sign in ((-1, 1) if k else (1,)):
            if dead[sign]:
                continue
            table, step = (pos, phi) if sign > 0 else (neg, inv)
            if k not in table:
                table[k] = compose(step, table[k - 1])
            cand = table[k]
            if cand.degree > cap:
                dead[sign] = True
                continue
            if cand.degree == target_deg and compose(cand, tau).expand() == lhs:
                return sign * k
    return None


def _conjugation_check(phi: PlaneAut, tau: PlaneAut, i: int, n_max: int = 5) -> bool:
    for n in range(1, n_max + 1):
        if compose(tau, power(phi, n)) != compose(power(phi, i * n), tau):
            return False
    return True


def _cyclic_kernel_data(phi: PlaneAut, p: Point, ell: int, desc: CurveDescriptor) -> dict:
    data = {
        "ell": ell,
        "G_p": "{g in Aut(A^2, C1) : g(p) = p}",
        "formula": "A = intersection over i < l of <phi> (Aut(A^2, O_{phi^l}(p)) phi^-i)",
        "lower_bound": "intersection over i < l of <phi> (Ker(R) phi^-i)",
        "semidecision": "membership() on orbit windows",
    }
    f, g = power(phi, ell).expand()
    K = phi.field
    # phi^l = (a x + c, b y + P(x)) on a vertical line: report b and the root-of-unity diagnostic
    if f.degree == 1 and not f.coeff(0, 1) and g.degree_in("y") == 1 and all(j in (0, 1) for _, j in g.support):
        b = g.coeff(0, 1)
        if all(j == 0 or (i, j) == (0, 1) for i, j in g.support):
            data["b"] = str(b)
            partial, geo = K.one, K.one
            roots = []
            for m in range(2, 13):
                geo = geo * b
                partial = partial + geo
                if partial == 1:
                    roots.append(m)
            data["geometric_sums_equal_1"] = roots
    return data


# -- membership -------------------------------------------------------------------------


@dataclass
class MembershipResult:
    verdict: str  # "in", "out" or "verified_up_to_bound"
    reason: str
    flags: list[str] = dc_field(default_factory=list)
    checked: int = 0

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason, "flags": self.flags, "checked": self.checked}


def membership(psi: PlaneAut, orbit: OrbitSample, stab: StabilizerDescriptor | None = None) -> MembershipResult:
    """Whether ``psi`` maps the orbit onto itself (setwise), as far as the window can tell."""
    pts = orbit.point_list()
    lookup = set(pts)
    if orbit.exhausted:
        imgs = {psi(q) for q in pts}
        if imgs == lookup:
            return MembershipResult("in", "finite orbit mapped onto itself", checked=len(pts))
        return MembershipResult("out", "finite orbit not mapped onto itself", checked=len(pts))
    if orbit.mode == "cyclic":
        lookup = set(cyclic_orbit(orbit.generators[0], orbit.base_point, 2 * orbit.bound).point_list())
    middle = orbit.window(orbit.bound / 2)
    checked = 0
    for q in middle:
        checked += 1
        if psi(q) not in lookup:
            return MembershipResult("out", f"{q} is mapped to {psi(q)}, outside the window", checked=checked)
    if stab is not None:
        got, why = stab.decide(psi, orbit)
        if got is True:
            return MembershipResult("in", why, checked=checked)
        if got is False:
            return MembershipResult("out", why, checked=checked)
    flags = []
    inv = psi.inverse()
    for q in middle:
        checked += 1
        if inv(q) not in lookup:
            flags.append("image is proper subset of window")
            break
    return MembershipResult("verified_up_to_bound", "middle of the window maps into the window", flags, checked)


# -- dynamical degree -------------------------------------------------------------------


@dataclass
class DynamicalDegree:
    degrees: list[int]
    estimate: float
    exact_hint: int | None

    def to_json(self) -> dict:
        return {"degrees": self.degrees, "estimate": self.estimate, "exact_hint": self.exact_hint}


def _expansion_bits(phi: PlaneAut) -> int:
    f, g = phi.expand()
    K = phi.field
    return sum(K.bits(c) for poly in (f, g) for c in poly.raw_terms.values())


def dynamical_degree(phi: PlaneAut, M: int, bit_cap: int = DEFAULT_BIT_CAP) -> DynamicalDegree:
    """Degrees of ``phi^m`` for ``m <= M`` and the root estimate ``deg(phi^M)^(1/M)``."""
    if M < 1:
        raise ValueError("M must be positive")
    degrees = []
    cur = phi
    for m in range(1, M + 1):
        if m > 1:
            cur = compose(phi, cur)
        degrees.append(cur.degree)
        if _expansion_bits(cur) > bit_cap:
            raise SizeLimitError(f"expansion of phi^{m} exceeds {bit_cap} bits")
    est = float(degrees[-1]) ** (1.0 / M)
    return DynamicalDegree(degrees, est, henon_degree(phi))
