"""Brute-force checks of the stabilizer case analysis over finite fields.

Over a finite field the whole symmetry group of a T3-T5 curve is a small
dihedral-type group ``C_n x| C_2``.  Every subgroup can be listed, every
orbit enumerated, and the stabilizer computed by literally moving points.
The formula side goes through :func:`orbitstab.stabilizer.orbit_stabilizer`
with the closure check switched off; a finite orbit never has a curve as
closure, so what gets confirmed is the case analysis, not the hypothesis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra import GF, BivarPoly, Field, quadratic_has_root
from .autmap import PlaneAut, Point
from .classify import CurveDescriptor, Torus, _fmt, classify_canonical, enumerate_group
from .orbit import group_orbit
from .stabilizer import generated_subgroup, isotropy, orbit_stabilizer, subgroup_normal_form

DEFAULT_GRID = {"T3": [3, 5, 7, 11, 13], "T4": [3, 7, 11], "T5": [2, 4]}

SKIP_NOTE = "torus isotropy nontrivial, skipped"
CLOSURE_NOTE = (
    "over a finite field every orbit is finite, so the irreducible-curve hypothesis never holds; "
    "the grid checks the case analysis (orbit equations and the dihedral structure) only"
)


def _require_finite(desc: CurveDescriptor) -> None:
    if desc.kind not in ("T3", "T4", "T5"):
        raise ValueError(f"only types T3-T5 are enumerated, not {desc.kind}")
    if not desc.ground.is_finite:
        raise ValueError("enumeration needs a finite ground field")


def enumerate_G(desc: CurveDescriptor) -> list[PlaneAut]:
    """Every element of the symmetry group of a T3-T5 curve over a finite field."""
    _require_finite(desc)
    return enumerate_group(desc)


def curve_points(desc: CurveDescriptor) -> list[Point]:
    K = desc.field
    els = K.elements()
    return [Point(x, y) for x in els for y in els if not desc.F.evaluate(x, y)]


def brute_stabilizer(desc: CurveDescriptor, p: Point, H_gens: Sequence[PlaneAut]) -> list[PlaneAut]:
    """Elements of G mapping the H-orbit of ``p`` onto itself, found by trying them all."""
    _require_finite(desc)
    if desc.F.evaluate(p.x, p.y):
        raise ValueError(f"{p} is not on the curve")
    G = enumerate_G(desc)
    if H_gens:
        orb = group_orbit(H_gens, p, L=4 * len(G) + 4)
        if not orb.exhausted:
            raise AssertionError("orbit of a finite group was not exhausted")
        O = set(orb.point_list())
    else:
        O = {p}
    return [g for g in G if {g(q) for q in O} == O]


def brute_isotropy(desc: CurveDescriptor, p: Point) -> list[PlaneAut]:
    return [g for g in enumerate_G(desc) if g(p) == p]


# -- curve families ------------------------------------------------------------


def canonical_curve(kind: str, K: Field, params: dict) -> CurveDescriptor:
    """Build the T3/T4/T5 descriptor with the given parameters over ``K``."""
    x, y, one = BivarPoly.x(K), BivarPoly.y(K), BivarPoly.const(K, 1)
    if kind == "T3":
        F = x * y - one.scale(params["lam"])
    elif kind == "T4":
        lam, nu = K(params["lam"]), K(params["nu"])
        F = x * x + (y * y).scale(nu / lam) - one.scale(lam.inverse())
    elif kind == "T5":
        F = x * x + (x * y).scale(params["mu"]) + y * y + one
    else:
        raise ValueError(f"no canonical family {kind}")
    desc = classify_canonical(F, ground=K)
    if desc.kind != kind:
        raise ValueError(f"parameters {params} do not give a {kind} curve over {K.name}")
    return desc


def family_params(kind: str, K: Field) -> list[dict]:
    nz = K.nonzero_elements()
    if kind == "T3":
        return [{"lam": l} for l in nz]
    if kind == "T4":
        if K.characteristic == 2:
            return []
        return [{"lam": l, "nu": n} for l in nz for n in nz if not (-l * n).is_square()]
    if kind == "T5":
        if K.characteristic != 2:
            return []
        return [{"mu": m} for m in nz if not quadratic_has_root(m)]
    raise ValueError(kind)


# -- group tables ------------------------------------------------------------------


class GroupTable:
    """Elements of G as ``(torus key, flip)`` with permutations of the curve points."""

    def __init__(self, desc: CurveDescriptor):
        _require_finite(desc)
        self.desc = desc
        self.tor = Torus(desc)
        self.points = curve_points(desc)
        self.pindex = {q: i for i, q in enumerate(self.points)}
        self.params = {self.tor.key(t): t for t in self.tor.params()}
        self.elements = [(k, f) for f in (False, True) for k in self.params]
        self.perm = {}
        for k, f in self.elements:
            g = self.tor.element(self.params[k], f)
            self.perm[(k, f)] = tuple(self.pindex[g(q)] for q in self.points)
        self.generator = max(self.params.values(), key=self.tor.order)
        self.n = len(self.params)

    def subgroups(self) -> Iterable[tuple[int, int | None]]:
        """``(d, j)``: ``<c^d>`` alone (``j=None``) or with the coset element ``c^j J``, ``0 <= j < d``."""
        for d in range(1, self.n + 1):
            if self.n % d:
                continue
            yield d, None
            for j in range(d):
                yield d, j

    def subgroup_gens(self, d: int, j: int | None) -> list[tuple]:
        tor, c = self.tor, self.generator
        gens = [(tor.pow(c, d), False)]
        if j is not None:
            gens.append((tor.pow(c, j), True))
        return gens

    def closure(self, gens: Sequence[tuple]) -> set:
        """Keys of the subgroup generated by ``(param, flip)`` pairs."""
        tor = self.tor
        one = (tor.one(), False)
        seen = {(tor.key(one[0]), False): one}
        frontier = [one]
        while frontier:
            nxt = []
            for s in frontier:
                for g in gens:
                    r = tor.compose(s, g)
                    k = (tor.key(r[0]), r[1])
                    if k not in seen:
                        seen[k] = r
                        nxt.append(r)
            frontier = nxt
        return set(seen)

    def stabilizer_of(self, O: set[int]) -> set:
        return {g for g, pm in self.perm.items() if {pm[i] for i in O} == O}

    def torus_isotropy(self, i: int) -> int:
        return sum(1 for k in self.params if self.perm[(k, False)][i] == i)


def predicted_set(st, table: GroupTable) -> set:
    """Evaluate a stabilizer descriptor as a set of ``(torus key, flip)``."""
    tor = table.tor
    A0 = generated_subgroup(tor, st.torus_part)
    out = {(k, False) for k in A0}
    if st.coset is not None:
        shift = tor.mul(st.coset, st.tau_param)
        out |= {(tor.key(tor.mul(t, shift)), True) for t in A0.values()}
    return out


# -- the grid ---------------------------------------------------------------------


@dataclass
class InstanceRecord:
    q: int
    kind: str
    params: dict
    point: Point
    H: list
    brute: list
    predicted: list
    match: bool | None
    case_tag: str | None = None
    hypothesis_note: str = ""

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "type": self.kind,
            "params": {k: _fmt(v) for k, v in self.params.items()},
            "p": self.point.to_json(),
            "H_generators": self.H,
            "brute": self.brute,
            "predicted": self.predicted,
            "match": self.match,
            "case_tag": self.case_tag,
            "hypothesis_note": self.hypothesis_note,
        }


@dataclass
class VerificationGrid:
    fields: dict
    records: list[InstanceRecord] = dc_field(default_factory=list)
    group_orders: dict = dc_field(default_factory=dict)
    seconds: float = 0.0
    note: str = CLOSURE_NOTE

    @property
    def checked(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.match is not None]

    @property
    def mismatches(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.match is False]

    @property
    def skips(self) -> int:
        return sum(1 for r in self.records if r.match is None)

    @property
    def match_rate(self) -> float:
        c = self.checked
        return sum(r.match for r in c) / len(c) if c else 1.0

    def summary(self) -> list[dict]:
        rows: dict = {}
        for r in self.records:
            row = rows.setdefault((r.kind, r.q), {"type": r.kind, "q": r.q, "instances": 0, "matches": 0, "skips": 0})
            row["instances"] += 1
            if r.match is None:
                row["skips"] += 1
            elif r.match:
                row["matches"] += 1
        return [rows[k] for k in sorted(rows)]

    def table(self) -> str:
        lines = [f"{'type':<5}{'q':>4}{'instances':>11}{'matches':>9}{'skips':>7}"]
        for row in self.summary():
            lines.append(f"{row['type']:<5}{row['q']:>4}{row['instances']:>11}{row['matches']:>9}{row['skips']:>7}")
        lines.append(f"match rate {self.match_rate:.4f} over {len(self.checked)} instances, {self.skips} skipped")
        return "\n".join(lines)

    def to_json(self, full: bool = False) -> dict:
        out = {
            "fields": self.fields,
            "summary": self.summary(),
            "instances": len(self.records),
            "checked": len(self.checked),
            "skips": self.skips,
            "match_rate": self.match_rate,
            "mismatches": [r.to_json() for r in self.mismatches],
            "group_orders": self.group_orders,
            "note": self.note,
        }
        if full:
            out["records"] = [r.to_json() for r in self.records]
        return out


def _fmt_key(table: GroupTable, key: tuple) -> list:
    k, f = key
    return [_fmt(table.params[k]), f]


def verify_curve(desc: CurveDescriptor, q: int, grid: VerificationGrid | None = None) -> list[InstanceRecord]:
    """Compare brute and predicted stabilizers for every point and subgroup of one curve."""
    table = GroupTable(desc)
    tor = table.tor
    records = []
    if grid is not None:
        grid.group_orders[f"{desc.kind} q={q} {_fmt_params(desc.params)}"] = len(table.elements)
    subgroups = [(d, j, table.subgroup_gens(d, j)) for d, j in table.subgroups()]
    closures = [table.closure(g) for _, _, g in subgroups]
    for i, p in enumerate(table.points):
        free = table.torus_isotropy(i) == 1
        for (d, j, gens), Hset in zip(subgroups, closures):
            Hlabel = [[_fmt(t), f] for t, f in gens]
            if not free:
                records.append(InstanceRecord(q, desc.kind, desc.params, p, Hlabel, [], [], None, None, SKIP_NOTE))
                continue
            O = {table.perm[h][i] for h in Hset}
            brute = table.stabilizer_of(O)
            h = subgroup_normal_form(gens, desc, p)
            st = orbit_stabilizer(desc, p, h, check_hypothesis=False)
            pred = predicted_set(st, table)
            records.append(
                InstanceRecord(
                    q,
                    desc.kind,
                    desc.params,
                    p,
                    Hlabel,
                    sorted((_fmt_key(table, k) for k in brute), key=str),
                    sorted((_fmt_key(table, k) for k in pred), key=str),
                    brute == pred,
                    st.case_tag,
                )
            )
    if grid is not None:
        grid.records.extend(records)
    return records


def _fmt_params(params: dict) -> str:
    return ",".join(f"{k}={_fmt(v)}" for k, v in sorted(params.items()))


def verify_theorem_grid(spec: dict | None = None) -> VerificationGrid:
    """Run the brute-versus-formula comparison over a grid ``{type: [q, ...]}``."""
    spec = dict(DEFAULT_GRID if spec is None else spec)
    grid = VerificationGrid({k: list(v) for k, v in spec.items()})
    t0 = time.perf_counter()
    for kind in sorted(spec):
        for q in spec[kind]:
            K = GF(q)
            for params in family_params(kind, K):
                desc = canonical_curve(kind, K, params)
                verify_curve(desc, q, grid)
    grid.seconds = time.perf_counter() - t0
    return grid


def isotropy_matches(desc: CurveDescriptor) -> tuple[int, int]:
    """``(points checked, points where brute isotropy equals the formula)``."""
    total = ok = 0
    G = enumerate_G(desc)
    for p in curve_points(desc):
        total += 1
        brute = {g for g in G if g(p) == p}
        ok += brute == set(isotropy(desc, p).elements)
    return total, ok
