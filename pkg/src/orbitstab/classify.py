"""Recognition of canonical curves and their symmetry groups.

Only curves already written in canonical form are recognized; no search
for a normalizing automorphism is attempted.  Templates (after making the
polynomial monic):

====== =====================================  =========================
tag    equation                                group
====== =====================================  =========================
T1     x^b - lam y^a, a, b > 1 coprime         (t^a x, t^b y)
T2     x^b y^a - lam, coprime, ab != 1          (t^a x, t^-b y)
T3     xy - lam                                (t x, y/t) and sigma
T4     lam x^2 + nu y^2 - 1, -lam nu nonsquare  T_{lam,nu} and tau
T5     x^2 + mu xy + y^2 - 1, char 2            T_mu and sigma_mu
T6     x                                       (a x, b y + P(x))
Fence  P(x), nonconstant                       (al x + be, ga y + Q(x))
====== =====================================  =========================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any

from .algebra import BivarPoly, Field, FieldElem, quadratic_has_root
from .autmap import (
    PlaneAut,
    Point,
    distinguished_involution,
    linear,
    make_family_element,
    swap,
)
from .closure import is_stable
from .errors import NotInGroupError

__all__ = [
    "CurveDescriptor",
    "GroupDescriptor",
    "Torus",
    "algebraicity",
    "classify_canonical",
    "make_family_element",
    "symmetry_group",
]

TORIC = ("T3", "T4", "T5")


def _bezout(a: int, b: int) -> tuple[int, int]:
    """``(u, v)`` with ``u a + v b == 1`` for coprime ``a, b``."""
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r != 1:
        raise ValueError(f"{a} and {b} are not coprime")
    return old_s, old_t


def _to_ground(x: FieldElem, ground: Field) -> FieldElem:
    if x.field == ground:
        return x
    return FieldElem(ground, x.field.restrict(x.v))


def _fmt(v: Any) -> Any:
    if isinstance(v, FieldElem):
        return str(v)
    if isinstance(v, BivarPoly):
        return str(v)
    if isinstance(v, tuple):
        return [_fmt(e) for e in v]
    return v


@dataclass
class CurveDescriptor:
    kind: str
    params: dict
    F: BivarPoly
    ground: Field
    side_conditions: dict = dc_field(default_factory=dict)
    note: str = ""
    conjugator: PlaneAut | None = None

    @property
    def field(self) -> Field:
        return self.F.field

    def to_json(self) -> dict:
        out = {
            "type": self.kind,
            "params": {k: _fmt(v) for k, v in self.params.items()},
            "defining_poly": str(self.F),
            "defining_terms": self.F.to_json(),
            "ground_field": self.ground.describe(),
            "side_conditions": dict(self.side_conditions),
        }
        if self.note:
            out["note"] = self.note
        if self.conjugator is not None:
            out["conjugator"] = self.conjugator.to_json()
        return out


def classify_canonical(F: BivarPoly, ground: Field | None = None, conjugator: PlaneAut | None = None) -> CurveDescriptor:
    """Match ``F`` against the canonical templates; unmatched input gives ``Other``.

    ``ground`` is the field the symmetry group is taken over.  By default
    it is the base field when every coefficient lies there, otherwise the
    coefficient field itself.
    """
    if not F:
        raise ValueError("cannot classify the zero polynomial")
    F = F.monic()
    K = F.field
    if ground is None:
        ground = K.base if F.coefficients_in_base() else K
    S = F.support
    char = K.characteristic

    def make(kind, params, sides=None, note=""):
        return CurveDescriptor(kind, params, F, ground, sides or {}, note, conjugator)

    def other(note):
        return make("Other", {}, note=note)

    if F.degree == 2 and {(2, 0), (0, 2), (0, 0)} <= S and S <= {(2, 0), (1, 1), (0, 2), (0, 0)}:
        e, cyy, cxy = F.coeff(0, 0), F.coeff(0, 2), F.coeff(1, 1)
        if char != 2 and not cxy:
            lam = -e.inverse()
            nu = -cyy / e
            nonsq = not _to_ground(-lam * nu, ground).is_square()
            if not nonsq:
                return make("Other", {}, {"minus_lam_nu_nonsquare": False}, "-lam*nu is a square: the conic splits")
            return make("T4", {"lam": lam, "nu": nu}, {"minus_lam_nu_nonsquare": True})
        if char == 2 and cyy == 1 and e == 1 and cxy:
            rootless = not quadratic_has_root(_to_ground(cxy, ground))
            if not rootless:
                return make("Other", {}, {"rootless": False}, "x^2 + mu x + 1 has a root: the conic splits")
            return make("T5", {"mu": cxy}, {"rootless": True})
        return other("conic not in canonical form")
    if len(S) == 2 and (0, 0) in S:
        (b, a), = S - {(0, 0)}
        if a >= 1 and b >= 1:
            lam = -F.coeff(0, 0)
            if a == b == 1:
                return make("T3", {"lam": lam})
            if math.gcd(a, b) != 1:
                return make("Other", {}, {"coprime": False}, "exponents are not coprime")
            return make("T2", {"a": a, "b": b, "lam": lam}, {"coprime": True, "ab_ne_1": True})
    if len(S) == 2 and all(i == 0 or j == 0 for i, j in S):
        xs = [i for i, j in S if j == 0 and i > 0]
        ys = [j for i, j in S if i == 0 and j > 0]
        if len(xs) == 1 and len(ys) == 1:
            b, a = xs[0], ys[0]
            if a > 1 and b > 1:
                if math.gcd(a, b) != 1:
                    return make("Other", {}, {"coprime": False}, "exponents are not coprime")
                lam = -F.coeff(0, a) / F.coeff(b, 0)
                return make("T1", {"a": a, "b": b, "lam": lam}, {"coprime": True})
    if F.is_univariate_x() and F.degree >= 1:
        if F == BivarPoly.x(K):
            return make("T6", {})
        return make("Fence", {"P": F})
    return other("no canonical template matches")


# -- tori ------------------------------------------------------------------------


class Torus:
    """The connected part of the symmetry group of a T1-T5 curve.

    Parameters are field elements ``t`` (T1-T3) or pairs ``(a, b)``
    (T4, T5).  A group element is a pair ``(t, flip)`` meaning ``t`` or
    ``t o inv`` with ``inv`` the distinguished involution; since the
    involution inverts the torus, ``(s, f)(t, g) = (s t^(+-1), f xor g)``.
    """

    def __init__(self, desc: CurveDescriptor):
        if desc.kind not in ("T1", "T2", "T3", "T4", "T5"):
            raise ValueError(f"type {desc.kind} has no torus")
        self.desc = desc
        self.kind = desc.kind
        self.cp = desc.params
        self.field = desc.field
        self.has_flip = desc.kind in TORIC
        K = self.field
        if self.kind == "T4":
            self._J = [[K.one, K.zero], [K.zero, -K.one]]
        elif self.kind == "T5":
            self._J = [[K.one, self.cp["mu"]], [K.zero, K.one]]
        elif self.kind == "T3":
            self._J = [[K.zero, K.one], [K.one, K.zero]]
        else:
            self._J = None

    # -- group law ---------------------------------------------------------
    def one(self):
        K = self.field
        return (K.one, K.zero) if self.kind in ("T4", "T5") else K.one

    def mul(self, s, t):
        if self.kind == "T4":
            (a, b), (c, d) = s, t
            ln = self.cp["lam"] * self.cp["nu"]
            return (a * c - ln * b * d, a * d + b * c)
        if self.kind == "T5":
            (a, b), (c, d) = s, t
            return (a * c + b * d, a * d + b * c + self.cp["mu"] * b * d)
        return s * t

    def inv(self, t):
        if self.kind == "T4":
            return (t[0], -t[1])
        if self.kind == "T5":
            return (t[0] + self.cp["mu"] * t[1], -t[1])
        return t.inverse()

    def pow(self, t, n: int):
        if n < 0:
            t, n = self.inv(t), -n
        out, base = self.one(), t
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_one(self, t) -> bool:
        return t == self.one()

    def valid(self, t) -> bool:
        if self.kind == "T4":
            a, b = t
            return a * a + self.cp["lam"] * self.cp["nu"] * b * b == 1
        if self.kind == "T5":
            a, b = t
            return a * a + self.cp["mu"] * a * b + b * b == 1
        return bool(t)

    def compose(self, g, h):
        (s, f), (t, e) = g, h
        return (self.mul(s, self.inv(t) if f else t), f != e)

    def inverse_element(self, g):
        t, f = g
        return (t, True) if f else (self.inv(t), False)

    # -- matrices and maps -----------------------------------------------------
    def torus_matrix(self, t) -> list[list[FieldElem]]:
        K = self.field
        if self.kind == "T1":
            return [[t ** self.cp["a"], K.zero], [K.zero, t ** self.cp["b"]]]
        if self.kind == "T2":
            return [[t ** self.cp["a"], K.zero], [K.zero, t ** (-self.cp["b"])]]
        if self.kind == "T3":
            return [[t, K.zero], [K.zero, t.inverse()]]
        a, b = t
        if self.kind == "T4":
            return [[a, -self.cp["nu"] * b], [self.cp["lam"] * b, a]]
        return [[a, b], [b, a + self.cp["mu"] * b]]

    def matrix(self, t, flip: bool = False) -> list[list[FieldElem]]:
        m = self.torus_matrix(t)
        if flip:
            if self._J is None:
                raise NotInGroupError(f"type {self.kind} has no involution")
            m = _matmul(m, self._J)
        return m

    def element(self, t, flip: bool = False) -> PlaneAut:
        if not self.valid(t):
            raise NotInGroupError(f"{_fmt(t)} is not a parameter of the {self.kind} torus")
        return linear(self.field, self.matrix(t, flip))

    def involution(self) -> PlaneAut:
        if self.kind == "T3":
            return swap(self.field)
        return distinguished_involution(self.field, self.kind, self.cp)

    def act(self, g, p: Point) -> Point:
        (m00, m01), (m10, m11) = self.matrix(*g)
        return Point(m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y)

    def key(self, t):
        return tuple(e.v for e in t) if isinstance(t, tuple) else t.v

    def format(self, t) -> Any:
        return _fmt(t)

    def _param_from_matrix(self, m):
        K = self.field
        if self.kind in ("T1", "T2"):
            a, b = self.cp["a"], self.cp["b"]
            if m[0][1] or m[1][0] or not m[0][0] or not m[1][1]:
                return None
            u, v = _bezout(a, b)
            y = m[1][1] if self.kind == "T1" else m[1][1].inverse()
            return m[0][0] ** u * y**v
        if self.kind == "T3":
            return m[0][0] if m[0][0] else None
        if self.kind == "T4":
            return (m[0][0], m[1][0] / self.cp["lam"])
        return (m[0][0], m[1][0])

    def decompose(self, psi: PlaneAut):
        """``(t, flip)`` with ``psi == element(t, flip)``; raises if ``psi`` is not in the group."""
        if not psi.is_linear():
            raise NotInGroupError(f"{psi} is not linear, so not in the {self.kind} group")
        m = [list(r) for r in psi.matrix()]
        options = [(m, False)]
        if self._J is not None:
            options.append((_matmul(m, _inverse2(self._J)), True))
        for mm, flip in options:
            t = self._param_from_matrix(mm)
            if t is not None and self.valid(t) and self.matrix(t, flip) == m:
                return (t, flip)
        raise NotInGroupError(f"{psi} is not in the symmetry group of {self.desc.F}")

    # -- isotropy --------------------------------------------------------------
    def isotropy_param(self, p: Point):
        """Torus parameter ``t`` with ``t o inv`` fixing ``p``."""
        x, y = p
        if self.kind == "T3":
            return x / y
        if self.kind == "T4":
            return (2 * self.cp["lam"] * x * x - 1, 2 * x * y)
        if self.kind == "T5":
            return (x * x + y * y, self.cp["mu"] * y * y)
        raise NotInGroupError(f"type {self.kind} has no involution coset")

    # -- finite fields ---------------------------------------------------------
    def params(self) -> list:
        """All torus parameters over a finite ground field."""
        g = self.desc.ground
        if not g.is_finite:
            raise ValueError("parameters can only be listed over a finite field")
        K = self.field
        els = [K(e) if g != K else e for e in g.elements()]
        if self.kind in ("T4", "T5"):
            return [(a, b) for a in els for b in els if self.valid((a, b))]
        nz = [e for e in els if e]
        if self.kind in ("T1", "T2"):
            seen, out = set(), []
            for t in nz:
                k = tuple(e.v for row in self.torus_matrix(t) for e in row)
                if k not in seen:
                    seen.add(k)
                    out.append(t)
            return out
        return nz

    def order(self, t) -> int:
        n, s = 1, t
        while not self.is_one(s):
            s = self.mul(s, t)
            n += 1
        return n


def _matmul(a, b):
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def _inverse2(m):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]


# -- symmetry groups ---------------------------------------------------------------


@dataclass
class GroupDescriptor:
    presentation: str
    structure: str
    is_algebraic: bool
    countability: str
    desc: CurveDescriptor
    elements: list[PlaneAut] | None = None
    torus: dict | None = None
    involution: PlaneAut | None = None
    kernel: str | None = None

    def __len__(self) -> int:
        if self.elements is None:
            raise TypeError("group is infinite")
        return len(self.elements)

    def to_json(self) -> dict:
        out = {
            "presentation": self.presentation,
            "structure": self.structure,
            "is_algebraic": self.is_algebraic,
            "countability": self.countability,
            "curve": self.desc.to_json(),
        }
        if self.torus is not None:
            out["torus"] = {k: _fmt(v) for k, v in self.torus.items()}
        if self.involution is not None:
            out["involution"] = self.involution.to_json()
        if self.kernel is not None:
            out["kernel"] = self.kernel
        if self.elements is not None:
            out["order"] = len(self.elements)
            out["elements"] = [g.to_json() for g in self.elements]
        return out


def enumerate_group(desc: CurveDescriptor) -> list[PlaneAut]:
    """Every element of the T1-T5 symmetry group over a finite ground field."""
    tor = Torus(desc)
    flips = (False, True) if tor.has_flip else (False,)
    return [tor.element(t, f) for f in flips for t in tor.params()]


def symmetry_group(desc: CurveDescriptor) -> GroupDescriptor:
    kind = desc.kind
    if kind == "Other":
        raise ValueError("no symmetry group is computed for curves of type Other")
    finite = desc.ground.is_finite
    if kind in ("T1", "T2", "T3", "T4", "T5"):
        tor = Torus(desc)
        cp = desc.params
        torus: dict = {}
        if kind == "T1":
            structure = f"{{(t^{cp['a']} x, t^{cp['b']} y)}}"
            torus = {"weights": (cp["a"], cp["b"]), "split": True}
        elif kind == "T2":
            structure = f"{{(t^{cp['a']} x, t^-{cp['b']} y)}}"
            torus = {"weights": (cp["a"], -cp["b"]), "split": True}
        elif kind == "T3":
            structure = "{(t x, t^-1 y)} x| {id, sigma}"
            torus = {"weights": (1, -1), "split": True}
        elif kind == "T4":
            structure = "T_{lam,nu} x| {id, tau}"
            torus = {"lam": cp["lam"], "nu": cp["nu"], "split": False}
        else:
            structure = "T_mu x| {id, sigma_mu}"
            torus = {"mu": cp["mu"], "split": False}
        inv = tor.involution() if tor.has_flip else None
        if finite:
            els = enumerate_group(desc)
            for g in els:
                if not is_stable(desc.F, g):
                    raise AssertionError(f"enumerated element {g} does not preserve {desc.F}")
            return GroupDescriptor("Finite", structure, True, "finite", desc, els, torus, inv)
        pres = "TorusExtInvolution" if inv is not None else "TorusWeights"
        return GroupDescriptor(pres, structure, True, "continuum-parametrized", desc, None, torus, inv)
    if kind == "T6":
        return GroupDescriptor(
            "JonquieresLine",
            "{(a x, b y + P(x))} = Ker(R) x| Aut(A^1)",
            False,
            "continuum-parametrized",
            desc,
            kernel="{(a x, y + P(x)) : P(0) = 0}",
        )
    return GroupDescriptor(
        "LowerBoundOnly",
        f"{{(al x + be, ga y + Q(x)) : F(al x + be)/F(x) constant}}, F = {desc.params['P']}",
        False,
        "continuum-parametrized",
        desc,
        kernel="{(x, y + Q(x)) : Q vanishing on the roots of F}",
    )


def algebraicity(obj) -> dict:
    """Whether a group or stabilizer descriptor is an algebraic group, with the reason."""
    if getattr(obj, "kernel_part", None) or getattr(obj, "kernel", None):
        return {"is_algebraic": False, "reason": "unbounded degree"}
    if isinstance(obj, GroupDescriptor) and obj.presentation in ("JonquieresLine", "LowerBoundOnly"):
        return {"is_algebraic": False, "reason": "unbounded degree"}
    count = getattr(obj, "countability", None)
    if count == "countably infinite":
        return {"is_algebraic": False, "reason": "countably infinite"}
    if count == "finite":
        return {"is_algebraic": True, "reason": "finite group"}
    return {"is_algebraic": True, "reason": "torus (possibly extended by an involution)"}
