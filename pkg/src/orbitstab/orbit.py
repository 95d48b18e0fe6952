"""Finite windows of orbits, periodicity detection and Galois saturation.

Every point in a sample carries a *label*: a tuple of ``(generator index,
exponent)`` runs read like a composition, so ``((1, -1), (0, 3))`` means
``g1^-1 o g0^3`` applied to the base point.  The base point has label ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra import Field
from .autmap import PlaneAut, Point, power
from .errors import SizeLimitError

DEFAULT_N = 50
DEFAULT_L = 8
DEFAULT_BIT_CAP = 10**6

Label = tuple[tuple[int, int], ...]


def _push(label: Label, gen: int, exp: int) -> Label:
    """Label of ``g_gen^exp o (label)``; merges with the leading run."""
    if label and label[0][0] == gen:
        e = label[0][1] + exp
        return label[1:] if e == 0 else ((gen, e),) + label[1:]
    return ((gen, exp),) + label


def label_depth(label: Label) -> int:
    return sum(abs(e) for _, e in label)


def point_bits(p: Point) -> int:
    return max(p.x.bits(), p.y.bits())


@dataclass
class OrbitSample:
    generators: tuple[PlaneAut, ...]
    base_point: Point
    points: list[tuple[Label, Point]]
    bound: int
    mode: str  # "cyclic", "group" or "set"
    periodic: int | None = None
    exhausted: bool = False
    truncated: dict = dc_field(default_factory=dict)
    _index: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._index:
            self._index = {q: lab for lab, q in self.points}

    @property
    def field(self) -> Field:
        return self.base_point.field

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, q: Point) -> bool:
        return q in self._index

    def label_of(self, q: Point) -> Label | None:
        return self._index.get(q)

    def point_list(self) -> list[Point]:
        return [q for _, q in self.points]

    def window(self, depth: int | float) -> list[Point]:
        """Points whose label has depth at most ``depth``."""
        return [q for lab, q in self.points if label_depth(lab) <= depth]

    def label_map(self, label: Label) -> PlaneAut:
        """The automorphism named by ``label``."""
        out = None
        for gen, exp in label:
            step = power(self.generators[gen], exp)
            out = step if out is None else out @ step
        if out is None:
            from .autmap import identity

            return identity(self.field)
        return out

    def evaluate_label(self, label: Label) -> Point:
        q = self.base_point
        for gen, exp in reversed(label):
            g = self.generators[gen] if exp > 0 else self.generators[gen].inverse()
            for _ in range(abs(exp)):
                q = g(q)
        return q

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "field": self.field.describe(),
            "generators": [g.to_json() for g in self.generators],
            "base_point": self.base_point.to_json(),
            "points": [{"label": [list(r) for r in lab], "point": q.to_json()} for lab, q in self.points],
            "size": len(self.points),
            "bound": self.bound,
            "periodic": self.periodic,
            "exhausted": self.exhausted,
            "truncated": dict(self.truncated),
        }


def cyclic_orbit(phi: PlaneAut, p: Point, N: int = DEFAULT_N, bit_cap: int = DEFAULT_BIT_CAP) -> OrbitSample:
    """Window ``{phi^n(p) : -N <= n <= N}``, forward and backward steps interleaved.

    A direction whose coordinates exceed ``bit_cap`` bits stops there and is
    flagged in ``truncated``; the other direction keeps going.
    """
    if N < 1:
        raise ValueError("N must be positive")
    inv = phi.inverse()
    points: list[tuple[Label, Point]] = [((), p)]
    index: dict[Point, int] = {p: 0}
    ends = {1: p, -1: p}
    alive = {1: True, -1: True}
    truncated: dict = {}
    period = None
    for n in range(1, N + 1):
        for sign, g in ((1, phi), (-1, inv)):
            if not alive[sign]:
                continue
            q = g(ends[sign])
            if q in index:
                period = n + abs(index[q]) if index[q] != 0 else n
                break
            if point_bits(q) > bit_cap:
                alive[sign] = False
                truncated["forward" if sign > 0 else "backward"] = n
                continue
            ends[sign] = q
            index[q] = sign * n
            points.append((((0, sign * n),), q))
        if period is not None or not any(alive.values()):
            break
    if period is not None:
        # rebuild as phi^0 .. phi^(period-1)
        q = p
        points = [((), p)]
        for k in range(1, period):
            q = phi(q)
            points.append((((0, k),), q))
        return OrbitSample((phi,), p, points, N, "cyclic", periodic=period, exhausted=True)
    return OrbitSample((phi,), p, points, N, "cyclic", truncated=truncated)


def group_orbit(gens: Sequence[PlaneAut], p: Point, L: int = DEFAULT_L, bit_cap: int = DEFAULT_BIT_CAP) -> OrbitSample:
    """Breadth-first orbit over words of length at most ``L``.

    Moves are tried in the order g0, g0^-1, g1, g1^-1, ...  The sample is
    exhausted when the point set is closed under every move, which is
    checked one level past ``L`` when needed.
    """
    if L < 1:
        raise ValueError("L must be positive")
    if not gens:
        raise ValueError("need at least one generator")
    moves = []
    for i, g in enumerate(gens):
        moves.append((i, 1, g))
        moves.append((i, -1, g.inverse()))
    points: list[tuple[Label, Point]] = [((), p)]
    index: dict[Point, Label] = {p: ()}
    frontier = [((), p)]
    exhausted = False
    for depth in range(1, L + 2):
        nxt = []
        for lab, q in frontier:
            for i, e, g in moves:
                r = g(q)
                if r in index:
                    continue
                if depth > L:
                    # only probing closure; something new exists
                    return OrbitSample(tuple(gens), p, points, L, "group", _index=index)
                if point_bits(r) > bit_cap:
                    raise SizeLimitError(f"orbit coordinates exceed {bit_cap} bits at word length {depth}")
                new = _push(lab, i, e)
                index[r] = new
                points.append((new, r))
                nxt.append((new, r))
        if not nxt:
            exhausted = True
            break
        frontier = nxt
    return OrbitSample(tuple(gens), p, points, L, "group", exhausted=exhausted, _index=index)


def galois_saturate(points: Iterable[Point]) -> list[Point]:
    """Close a point set under the Galois group acting on both coordinates."""
    out: list[Point] = []
    seen: set[Point] = set()
    for q in points:
        deg = q.x.field.degree
        for i in range(deg):
            r = Point(q.x.galois(i), q.y.galois(i))
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


def point_set_sample(points: Sequence[Point]) -> OrbitSample:
    """A finite set viewed as a complete sample (no generators)."""
    pts = list(dict.fromkeys(points))
    if not pts:
        raise ValueError("empty point set")
    labelled = [((), pts[0])] + [(((-1, i),), q) for i, q in enumerate(pts[1:], 1)]
    return OrbitSample((), pts[0], labelled, len(pts), "set", exhausted=True)
