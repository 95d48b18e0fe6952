"""Plane automorphisms stored as invertible words of generators.

A :class:`PlaneAut` is a word ``g1 g2 ... gn`` meaning the composite
``g1 o g2 o ... o gn`` (``gn`` acts first).  Three generator kinds exist:

* :class:`Affine`      ``(x, y) -> M (x, y) + v``
* :class:`Elementary`  ``(x, y) -> (a x, b y + P(x))``
* :class:`Swap`        ``(x, y) -> (y, x)``

Inverses are exact and cheap because every generator inverts in closed
form.  The expanded polynomial pair is computed lazily and memoized.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, NamedTuple, Sequence

from .algebra import BivarPoly, Field, FieldElem
from .errors import NotInGroupError, ParseError


class Point(NamedTuple):
    x: FieldElem
    y: FieldElem

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"

    def to_json(self) -> list:
        return [self.x.to_json(), self.y.to_json()]

    @property
    def field(self) -> Field:
        return self.x.field


def point(field: Field, x: Any, y: Any) -> Point:
    return Point(field(x), field(y))


# -- generators -------------------------------------------------------------


@dataclass(frozen=True)
class Affine:
    field: Field
    m: tuple[tuple[FieldElem, FieldElem], tuple[FieldElem, FieldElem]]
    v: tuple[FieldElem, FieldElem]

    def __post_init__(self):
        (a, b), (c, d) = self.m
        if not (a * d - b * c):
            raise NotInGroupError("affine matrix is singular")

    def apply(self, x: FieldElem, y: FieldElem) -> tuple[FieldElem, FieldElem]:
        (a, b), (c, d) = self.m
        return a * x + b * y + self.v[0], c * x + d * y + self.v[1]

    def inverse(self) -> Affine:
        (a, b), (c, d) = self.m
        det = a * d - b * c
        ia, ib, ic, id_ = d / det, -b / det, -c / det, a / det
        v0, v1 = self.v
        return Affine(self.field, ((ia, ib), (ic, id_)), (-(ia * v0 + ib * v1), -(ic * v0 + id_ * v1)))

    def polys(self) -> tuple[BivarPoly, BivarPoly]:
        f = self.field
        (a, b), (c, d) = self.m
        return (
            BivarPoly.from_terms(f, [((1, 0), a), ((0, 1), b), ((0, 0), self.v[0])]),
            BivarPoly.from_terms(f, [((1, 0), c), ((0, 1), d), ((0, 0), self.v[1])]),
        )

    def to_json(self) -> dict:
        return {
            "kind": "affine",
            "m": [[e.to_json() for e in row] for row in self.m],
            "v": [e.to_json() for e in self.v],
        }


@dataclass(frozen=True)
class Elementary:
    field: Field
    a: FieldElem
    b: FieldElem
    p: BivarPoly  # univariate in x

    def __post_init__(self):
        if not self.a or not self.b:
            raise NotInGroupError("elementary generator needs a, b != 0")
        if not self.p.is_univariate_x():
            raise ParseError("elementary generator polynomial must lie in k[x]")

    def apply(self, x: FieldElem, y: FieldElem) -> tuple[FieldElem, FieldElem]:
        return self.a * x, self.b * y + self.p.evaluate(x, y)

    def inverse(self) -> Elementary:
        ia, ib = self.a.inverse(), self.b.inverse()
        f = self.field
        # -b^{-1} P(a^{-1} x)
        q = BivarPoly.from_terms(f, [((i, 0), -ib * c * ia**i) for (i, _), c in self.p.items()])
        return Elementary(f, ia, ib, q)

    def polys(self) -> tuple[BivarPoly, BivarPoly]:
        f = self.field
        return (
            BivarPoly.monomial(f, 1, 0, self.a),
            BivarPoly.monomial(f, 0, 1, self.b) + self.p,
        )

    def to_json(self) -> dict:
        return {
            "kind": "elementary",
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "P": [[str(i), c.to_json()] for (i, _), c in sorted(self.p.items())],
        }


@dataclass(frozen=True)
class Swap:
    field: Field

    def apply(self, x: FieldElem, y: FieldElem) -> tuple[FieldElem, FieldElem]:
        return y, x

    def inverse(self) -> Swap:
        return self

    def polys(self) -> tuple[BivarPoly, BivarPoly]:
        return BivarPoly.y(self.field), BivarPoly.x(self.field)

    def to_json(self) -> dict:
        return {"kind": "swap"}


Generator = Affine | Elementary | Swap


# -- automorphisms ----------------------------------------------------------


class PlaneAut:
    """An automorphism of the affine plane given by a generator word."""

    __slots__ = ("field", "word", "_parents", "_expansion", "_inverse", "_lock", "name")

    def __init__(self, field: Field, word: Sequence[Generator] = (), *, name: str | None = None, _parents=None):
        self.field = field
        self.word = tuple(word)
        self._parents = _parents
        self._expansion: tuple[BivarPoly, BivarPoly] | None = None
        self._inverse: PlaneAut | None = None
        self._lock = threading.Lock()
        self.name = name

    # -- evaluation ------------------------------------------------------
    def apply_point(self, p: Point) -> Point:
        x, y = p
        for g in reversed(self.word):
            x, y = g.apply(x, y)
        return Point(x, y)

    __call__ = apply_point

    # -- expansion -------------------------------------------------------
    def expand(self) -> tuple[BivarPoly, BivarPoly]:
        """Expanded pair ``(f, g)`` with ``self(x, y) = (f(x, y), g(x, y))``."""
        if self._expansion is not None:
            return self._expansion
        # iterative post-order over composition parents (no deep recursion)
        stack: list[PlaneAut] = [self]
        while stack:
            node = stack[-1]
            if node._expansion is not None:
                stack.pop()
                continue
            if node._parents is not None:
                pending = [q for q in node._parents if q._expansion is None]
                if pending:
                    stack.extend(pending)
                    continue
                left, right = node._parents
                fr, gr = right._expansion
                fl, gl = left._expansion
                pair = (fl.substitute(fr, gr), gl.substitute(fr, gr))
            else:
                pair = node._expand_word()
            with node._lock:
                if node._expansion is None:
                    node._expansion = pair
            stack.pop()
        return self._expansion

    def _expand_word(self) -> tuple[BivarPoly, BivarPoly]:
        f = self.field
        cur = (BivarPoly.x(f), BivarPoly.y(f))
        for g in reversed(self.word):
            gf, gg = g.polys()
            cur = (gf.substitute(*cur), gg.substitute(*cur))
        return cur

    @property
    def degree(self) -> int:
        f, g = self.expand()
        return max(f.degree, g.degree)

    def expansion_key(self) -> tuple:
        f, g = self.expand()
        return (f, g)

    def is_identity(self) -> bool:
        f, g = self.expand()
        return f == BivarPoly.x(self.field) and g == BivarPoly.y(self.field)

    def is_linear(self) -> bool:
        """Homogeneous of degree one (a 2x2 matrix)."""
        f, g = self.expand()
        return all(i + j == 1 for i, j in f.support | g.support)

    def matrix(self) -> tuple[tuple[FieldElem, FieldElem], tuple[FieldElem, FieldElem]]:
        if not self.is_linear():
            raise ValueError("automorphism is not linear")
        f, g = self.expand()
        return ((f.coeff(1, 0), f.coeff(0, 1)), (g.coeff(1, 0), g.coeff(0, 1)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneAut):
            return NotImplemented
        return self.expand() == other.expand()

    def __hash__(self) -> int:
        return hash(self.expand())

    # -- group structure ---------------------------------------------------
    def inverse(self) -> PlaneAut:
        if self._inverse is None:
            inv = PlaneAut(self.field, [g.inverse() for g in reversed(self.word)])
            inv._inverse = self
            with self._lock:
                if self._inverse is None:
                    self._inverse = inv
        return self._inverse

    def __matmul__(self, other: PlaneAut) -> PlaneAut:
        return compose(self, other)

    def __str__(self) -> str:
        if self.name:
            return self.name
        f, g = self.expand()
        return f"({f}, {g})"

    def __repr__(self) -> str:
        return f"PlaneAut{self}"

    def to_json(self) -> list:
        return [g.to_json() for g in self.word]


def compose(phi: PlaneAut, psi: PlaneAut) -> PlaneAut:
    """``phi o psi`` (``psi`` acts first)."""
    if phi.field != psi.field:
        raise TypeError(f"cannot compose maps over {phi.field} and {psi.field}")
    if not phi.word:
        return psi
    if not psi.word:
        return phi
    return PlaneAut(phi.field, phi.word + psi.word, _parents=(phi, psi))


def invert(phi: PlaneAut) -> PlaneAut:
    return phi.inverse()


def apply_point(phi: PlaneAut, p: Point) -> Point:
    return phi.apply_point(p)


def power(phi: PlaneAut, n: int) -> PlaneAut:
    """``phi^n``; built as ``phi o phi^(n-1)`` so expansions substitute into ``phi``."""
    base = phi if n >= 0 else phi.inverse()
    out = identity(phi.field)
    for _ in range(abs(n)):
        out = compose(base, out)
    return out


def is_involution(phi: PlaneAut) -> bool:
    return compose(phi, phi).is_identity()


# -- constructors -----------------------------------------------------------


def identity(field: Field) -> PlaneAut:
    return PlaneAut(field, ())


def affine(field: Field, m: Sequence[Sequence[Any]], v: Sequence[Any] = (0, 0), name: str | None = None) -> PlaneAut:
    mm = tuple(tuple(field(e) for e in row) for row in m)
    return PlaneAut(field, [Affine(field, mm, (field(v[0]), field(v[1])))], name=name)


def linear(field: Field, m: Sequence[Sequence[Any]], name: str | None = None) -> PlaneAut:
    return affine(field, m, (0, 0), name=name)


def diagonal(field: Field, a: Any, b: Any, name: str | None = None) -> PlaneAut:
    return affine(field, [[a, 0], [0, b]], name=name)


def translation(field: Field, c: Any, d: Any) -> PlaneAut:
    return affine(field, [[1, 0], [0, 1]], (c, d))


def elementary(field: Field, a: Any, b: Any, p: BivarPoly | Sequence[Any] = (), name: str | None = None) -> PlaneAut:
    """``(x, y) -> (a x, b y + P(x))``; ``p`` is a polynomial or low->high coefficients."""
    poly = p if isinstance(p, BivarPoly) else BivarPoly.univariate(field, list(p))
    return PlaneAut(field, [Elementary(field, field(a), field(b), poly)], name=name)


def swap(field: Field) -> PlaneAut:
    return PlaneAut(field, [Swap(field)], name="sigma")


def henon(field: Field, p: BivarPoly | Sequence[Any], delta: Any = 1) -> PlaneAut:
    """``(x, y) -> (y, -delta x + P(y))`` as the word ``Elementary(1, -delta, P) o Swap``."""
    poly = p if isinstance(p, BivarPoly) else BivarPoly.univariate(field, list(p))
    return PlaneAut(field, [Elementary(field, field.one, -field(delta), poly), Swap(field)])


def henon_degree(phi: PlaneAut) -> int | None:
    """``deg P`` if the expansion of ``phi`` is ``(y, c x + P(y))`` with ``deg P >= 2``."""
    f, g = phi.expand()
    if f != BivarPoly.y(phi.field):
        return None
    if not g.coeff(1, 0):
        return None
    rest = g - BivarPoly.monomial(phi.field, 1, 0, g.coeff(1, 0))
    if any(i for i, _ in rest.support):
        return None
    d = rest.degree
    return d if d >= 2 else None


# -- canonical family elements ------------------------------------------------


def torus_matrix(kind: str, params: dict, a: FieldElem, b: FieldElem) -> list[list[FieldElem]]:
    """Matrix of the non-split torus element ``t_{a,b}``."""
    if kind == "T4":
        lam, nu = params["lam"], params["nu"]
        return [[a, -nu * b], [lam * b, a]]
    if kind == "T5":
        mu = params["mu"]
        return [[a, b], [b, a + mu * b]]
    raise ValueError(f"no matrix torus for {kind}")


def distinguished_involution(field: Field, kind: str, params: dict) -> PlaneAut:
    """sigma for T3, tau for T4, sigma_mu for T5."""
    if kind == "T3":
        return swap(field)
    if kind == "T4":
        return PlaneAut(field, linear(field, [[1, 0], [0, -1]]).word, name="tau")
    if kind == "T5":
        mu = params["mu"]
        return PlaneAut(field, linear(field, [[1, mu], [0, 1]]).word, name="sigma_mu")
    raise ValueError(f"type {kind} has no distinguished involution")


def make_family_element(desc, params: Any, involution: bool = False) -> PlaneAut:
    """Element of the symmetry group of a canonical curve descriptor.

    ``params`` per type: T1/T2/T3 ``t``; T4/T5 ``(a, b)``; T6 ``(a, b, P)``;
    Fence ``(alpha, beta, gamma, P)``.  ``involution`` right-multiplies by
    the distinguished involution (types 3-5).
    """
    kind, cp = desc.kind, desc.params
    field = desc.field
    if involution and kind not in ("T3", "T4", "T5"):
        raise NotInGroupError(f"type {kind} has no involution coset")
    if kind in ("T1", "T2", "T3"):
        t = field(params)
        if not t:
            raise NotInGroupError("torus parameter must be nonzero")
        if kind == "T1":
            g = diagonal(field, t ** cp["a"], t ** cp["b"])
        elif kind == "T2":
            g = diagonal(field, t ** cp["a"], t ** (-cp["b"]))
        else:
            g = diagonal(field, t, t.inverse())
    elif kind in ("T4", "T5"):
        a, b = (field(v) for v in params)
        if kind == "T4":
            norm = a * a + cp["lam"] * cp["nu"] * b * b
        else:
            norm = a * a + cp["mu"] * a * b + b * b
        if norm != 1:
            raise NotInGroupError(f"({a}, {b}) is not on the norm-one torus of {kind}")
        g = linear(field, torus_matrix(kind, cp, a, b))
    elif kind == "T6":
        a, b, p = params
        g = elementary(field, a, b, p)
    elif kind == "Fence":
        alpha, beta, gamma, p = params
        alpha, beta = field(alpha), field(beta)
        fence = cp["P"]
        moved = fence.substitute(
            BivarPoly.from_terms(field, [((1, 0), alpha), ((0, 0), beta)]), BivarPoly.y(field)
        )
        if not fence.is_associate(moved):
            raise NotInGroupError("x -> alpha x + beta does not preserve the fence polynomial")
        g = compose(affine(field, [[alpha, 0], [0, 1]], (beta, 0)), elementary(field, 1, gamma, p))
    else:
        raise NotInGroupError(f"no symmetry family for type {kind}")
    if involution:
        g = compose(g, distinguished_involution(field, kind, cp))
    return g


# -- serialisation -----------------------------------------------------------


def generator_from_json(field: Field, rec: dict) -> Generator:
    try:
        kind = rec["kind"]
        if kind == "swap":
            return Swap(field)
        if kind == "affine":
            m = tuple(tuple(field(e) for e in row) for row in rec["m"])
            if len(m) != 2 or any(len(r) != 2 for r in m):
                raise ParseError("affine matrix must be 2x2")
            v = rec.get("v", [0, 0])
            return Affine(field, m, (field(v[0]), field(v[1])))
        if kind == "elementary":
            p = BivarPoly.from_terms(field, (((int(e), 0), c) for e, c in rec.get("P", [])))
            return Elementary(field, field(rec["a"]), field(rec["b"]), p)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad generator record {rec!r}: {exc}") from exc
    raise ParseError(f"unknown generator kind {rec.get('kind')!r}")


def aut_from_json(field: Field, word: Any, name: str | None = None) -> PlaneAut:
    """Parse a generator word.  A raw polynomial pair is rejected."""
    if isinstance(word, dict):
        if "f" in word or "g" in word or "pair" in word:
            raise ParseError("automorphisms must be given as generator words, not raw polynomial pairs")
        word = [word]
    if not isinstance(word, list):
        raise ParseError(f"automorphism must be a list of generator records, got {word!r}")
    return PlaneAut(field, [generator_from_json(field, rec) for rec in word], name=name)
