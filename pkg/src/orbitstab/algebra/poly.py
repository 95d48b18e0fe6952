"""Sparse bivariate polynomials over an exact :class:`Field`.

Terms are stored as ``{(i, j): raw}`` for ``c * x^i * y^j``; zero
coefficients are never stored.  The monomial order is graded
lexicographic with ``x > y`` everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from ..errors import ParseError
from .fields import Field, FieldElem

Monomial = tuple[int, int]


def grlex_key(m: Monomial) -> tuple[int, int]:
    """Sort key: larger key means larger monomial."""
    return (m[0] + m[1], m[0])


def monomials_up_to(degree: int) -> list[Monomial]:
    """All monomials of total degree <= ``degree``, grlex descending."""
    out = [(i, d - i) for d in range(degree + 1) for i in range(d + 1)]
    out.sort(key=grlex_key, reverse=True)
    return out


def _clean(field: Field, terms: dict) -> dict:
    if field.prime_modulus:
        p = field.prime_modulus
        return {m: c % p for m, c in terms.items() if c % p}
    return {m: c for m, c in terms.items() if not field._is_zero(c)}


def _mul_terms(field: Field, a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    if field.native:
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                k = (i1 + i2, j1 + j2)
                out[k] = get(k, 0) + c1 * c2
    else:
        add, mul, zero = field._add, field._mul, field._zero
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                k = (i1 + i2, j1 + j2)
                out[k] = add(get(k, zero), mul(c1, c2))
    return _clean(field, out)


def _add_terms(field: Field, a: dict, b: dict, scale=None) -> dict:
    """``a + scale*b`` (``scale`` raw, default 1)."""
    out = dict(a)
    if field.native:
        for m, c in b.items():
            out[m] = out.get(m, 0) + (c if scale is None else scale * c)
    else:
        add, mul, zero = field._add, field._mul, field._zero
        for m, c in b.items():
            out[m] = add(out.get(m, zero), c if scale is None else mul(scale, c))
    return _clean(field, out)


class BivarPoly:
    """Immutable sparse polynomial in ``x, y``."""

    __slots__ = ("field", "_t", "_hash")

    def __init__(self, field: Field, terms: dict | None = None, *, _clean_terms: bool = True):
        self.field = field
        t = terms or {}
        self._t = _clean(field, t) if _clean_terms else t
        self._hash = None

    # -- construction --------------------------------------------------
    @classmethod
    def from_terms(cls, field: Field, terms: Iterable[tuple[Monomial, Any]]) -> BivarPoly:
        acc: dict = {}
        for (i, j), c in terms:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            r = field.raw(c)
            acc[(i, j)] = field._add(acc[(i, j)], r) if (i, j) in acc else r
        return cls(field, acc)

    @classmethod
    def zero(cls, field: Field) -> BivarPoly:
        return cls(field, {})

    @classmethod
    def const(cls, field: Field, c: Any) -> BivarPoly:
        return cls(field, {(0, 0): field.raw(c)})

    @classmethod
    def monomial(cls, field: Field, i: int, j: int, c: Any = 1) -> BivarPoly:
        return cls(field, {(i, j): field.raw(c)})

    @classmethod
    def x(cls, field: Field) -> BivarPoly:
        return cls.monomial(field, 1, 0)

    @classmethod
    def y(cls, field: Field) -> BivarPoly:
        return cls.monomial(field, 0, 1)

    @classmethod
    def univariate(cls, field: Field, coeffs: Sequence[Any], var: str = "x") -> BivarPoly:
        """Polynomial in one variable from coefficients, lowest degree first."""
        if var == "x":
            return cls.from_terms(field, (((k, 0), c) for k, c in enumerate(coeffs)))
        return cls.from_terms(field, (((0, k), c) for k, c in enumerate(coeffs)))

    # -- inspection ------------------------------------------------------
    @property
    def raw_terms(self) -> dict:
        return self._t

    def monomials(self) -> list[Monomial]:
        return sorted(self._t, key=grlex_key, reverse=True)

    def items(self) -> Iterator[tuple[Monomial, FieldElem]]:
        """Terms in grlex-descending order."""
        for m in self.monomials():
            yield m, FieldElem(self.field, self._t[m])

    def coeff(self, i: int, j: int) -> FieldElem:
        return FieldElem(self.field, self._t.get((i, j), self.field._zero))

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self._t), default=-1)

    def degree_in(self, var: str) -> int:
        k = 0 if var == "x" else 1
        return max((m[k] for m in self._t), default=-1)

    @property
    def leading_monomial(self) -> Monomial:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        return max(self._t, key=grlex_key)

    @property
    def leading_coeff(self) -> FieldElem:
        return FieldElem(self.field, self._t[self.leading_monomial])

    def is_univariate_x(self) -> bool:
        return all(j == 0 for _, j in self._t)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._t)

    def coefficients_in_base(self) -> bool:
        return all(self.field.in_base(c) for c in self._t.values())

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other) -> BivarPoly | None:
        if isinstance(other, BivarPoly):
            if other.field == self.field:
                return other
            if other.field == self.field.base:
                return other.change_field(self.field)
            raise TypeError(f"incompatible fields {self.field} and {other.field}")
        if isinstance(other, FieldElem) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return BivarPoly.const(self.field, other)
        return None

    def __add__(self, other) -> BivarPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return BivarPoly(self.field, _add_terms(self.field, self._t, o._t), _clean_terms=False)

    __radd__ = __add__

    def __neg__(self) -> BivarPoly:
        f = self.field
        return BivarPoly(f, {m: f._neg(c) for m, c in self._t.items()}, _clean_terms=False)

    def __sub__(self, other) -> BivarPoly:
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return BivarPoly(self.field, _add_terms(self.field, self._t, o._t, self.field._neg(self.field._one)), _clean_terms=False)

    def __rsub__(self, other) -> BivarPoly:
        return (-self) + other

    def __mul__(self, other) -> BivarPoly:
        if isinstance(other, FieldElem) or (isinstance(other, (int, Fraction)) and not isinstance(other, bool)):
            return self.scale(other)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return BivarPoly(self.field, _mul_terms(self.field, self._t, o._t), _clean_terms=False)

    __rmul__ = __mul__

    def scale(self, c: Any) -> BivarPoly:
        f = self.field
        r = f.raw(c)
        return BivarPoly(f, {m: f._mul(r, v) for m, v in self._t.items()})

    def __pow__(self, n: int) -> BivarPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BivarPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, BivarPoly):
            if other.field != self.field:
                try:
                    other = self._lift(other)
                except TypeError:
                    return False
            return self._t == other._t
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self._t == o._t

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.key, frozenset(self._t.items())))
        return self._hash

    # -- normal forms ----------------------------------------------------
    def monic(self) -> BivarPoly:
        """Scale so the grlex leading coefficient is 1 (zero stays zero)."""
        if not self._t:
            return self
        f = self.field
        inv = f._inv(self._t[self.leading_monomial])
        return BivarPoly(f, {m: f._mul(inv, c) for m, c in self._t.items()}, _clean_terms=False)

    def is_associate(self, other: BivarPoly) -> bool:
        """True iff ``other = c * self`` for a nonzero scalar ``c``."""
        if not self._t or not other._t:
            return not self._t and not other._t
        return self.monic() == other.monic()

    def change_field(self, field: Field) -> BivarPoly:
        """Embed a polynomial over ``field.base`` into ``field``."""
        if field == self.field:
            return self
        if field.base != self.field:
            raise TypeError(f"cannot move {self.field} polynomial into {field}")
        return BivarPoly(field, {m: field.embed(c) for m, c in self._t.items()}, _clean_terms=False)

    def galois(self, i: int) -> BivarPoly:
        """Apply the i-th Galois automorphism to every coefficient."""
        f = self.field
        return BivarPoly(f, {m: f._galois(c, i) for m, c in self._t.items()}, _clean_terms=False)

    # -- evaluation and composition ---------------------------------------
    def evaluate(self, x: FieldElem, y: FieldElem) -> FieldElem:
        target = x.field
        f = self.field
        if f != target:
            if target.base == f:
                return self.change_field(target).evaluate(x, y)
            raise TypeError(f"cannot evaluate {f} polynomial at {target} point")
        dx = max((m[0] for m in self._t), default=0)
        dy = max((m[1] for m in self._t), default=0)
        xp = [f._one]
        for _ in range(dx):
            xp.append(f._mul(xp[-1], x.v))
        yv = f.raw(y)
        yp = [f._one]
        for _ in range(dy):
            yp.append(f._mul(yp[-1], yv))
        acc = f._zero
        for (i, j), c in self._t.items():
            acc = f._add(acc, f._mul(c, f._mul(xp[i], yp[j])))
        return FieldElem(f, acc)

    def __call__(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self.evaluate(x, y)

    def substitute(self, fx: BivarPoly, gy: BivarPoly) -> BivarPoly:
        """``self(fx, gy)``, fully expanded."""
        f = self.field
        if fx.field != f:
            fx = fx.change_field(f) if fx.field == f.base else fx
        if gy.field != f:
            gy = gy.change_field(f) if gy.field == f.base else gy
        if not self._t:
            return self
        rows: dict[int, dict] = {}
        for (i, j), c in self._t.items():
            rows.setdefault(i, {})[j] = c
        max_j = max(j for _, j in self._t)
        gpow = [{(0, 0): f._one}]
        for _ in range(max_j):
            gpow.append(_mul_terms(f, gpow[-1], gy._t))
        acc: dict = {}
        fpow: dict = {(0, 0): f._one}
        for i in range(max(rows) + 1):
            if i:
                fpow = _mul_terms(f, fpow, fx._t)
            if i not in rows:
                continue
            inner: dict = {}
            for j, c in rows[i].items():
                inner = _add_terms(f, inner, gpow[j], c)
            acc = _add_terms(f, acc, _mul_terms(f, fpow, inner))
        return BivarPoly(f, acc, _clean_terms=False)

    def exact_divide(self, divisor: BivarPoly) -> BivarPoly | None:
        """Quotient ``Q`` with ``self == divisor * Q``, or ``None``."""
        if not divisor._t:
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        if divisor.field != f:
            divisor = divisor.change_field(f)
        lm = divisor.leading_monomial
        inv = f._inv(divisor._t[lm])
        rem = dict(self._t)
        quo: dict = {}
        neg_one = f._neg(f._one)
        while rem:
            top = max(rem, key=grlex_key)
            if top[0] < lm[0] or top[1] < lm[1]:
                return None
            c = f._mul(rem[top], inv)
            shift = (top[0] - lm[0], top[1] - lm[1])
            quo[shift] = c
            shifted = {(i + shift[0], j + shift[1]): v for (i, j), v in divisor._t.items()}
            rem = _add_terms(f, rem, shifted, f._mul(neg_one, c))
        return BivarPoly(f, quo)

    # -- formatting ------------------------------------------------------
    def to_json(self) -> list:
        f = self.field
        return [[i, j, f.to_json(self._t[(i, j)])] for i, j in self.monomials()]

    def __str__(self) -> str:
        if not self._t:
            return "0"
        out = ""
        for n, (m, c) in enumerate(self.items()):
            t = _term_str(str(c), m)
            if n == 0:
                out = t
            elif t.startswith("-"):
                out += " - " + t[1:]
            else:
                out += " + " + t
        return out

    def __repr__(self) -> str:
        return f"BivarPoly({self.field.name}, {self})"


def _term_str(cstr: str, m: Monomial) -> str:
    i, j = m
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    mono = "*".join(parts)
    if not mono:
        return cstr
    if cstr == "1":
        return mono
    if cstr == "-1":
        return "-" + mono
    body = cstr[1:] if cstr.startswith("-") else cstr
    if any(ch in body for ch in "+-*"):
        if cstr.startswith("-") and not any(ch in body for ch in "+-"):
            return f"-{body}*{mono}"
        return f"({cstr})*{mono}"
    return f"{cstr}*{mono}"


def poly_from_json(field: Field, data: Sequence) -> BivarPoly:
    """Parse the term-list form ``[[i, j, coeff], ...]``."""
    try:
        return BivarPoly.from_terms(field, (((int(t[0]), int(t[1])), t[2]) for t in data))
    except (TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad polynomial term list {data!r}: {exc}") from exc


def parse_poly(field: Field, text: str) -> BivarPoly:
    """Parse an expression such as ``"x^3 - y^2"`` or ``"x - s"``.

    ``s`` stands for sqrt(d) in a quadratic field and ``t`` for the
    generator of an extension field.
    """
    import sympy

    from .fields import ExtensionField, QuadraticField

    xs, ys, ss, ts = sympy.symbols("x y s t")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"x": xs, "y": ys, "s": ss, "t": ts})
        gens = [xs, ys]
        if isinstance(field, QuadraticField):
            gens.append(ss)
        elif isinstance(field, ExtensionField):
            gens.append(ts)
        p = sympy.Poly(sympy.expand(expr), *gens, domain="QQ")
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise ParseError(f"cannot parse polynomial {text!r}: {exc}") from exc
    acc = BivarPoly.zero(field)
    for monom, c in p.terms():
        coeff = field(Fraction(int(c.p), int(c.q)))
        if len(monom) == 3 and monom[2]:
            gen = field("s") if isinstance(field, QuadraticField) else field("t")
            coeff = coeff * gen ** monom[2]
        acc = acc + BivarPoly.monomial(field, monom[0], monom[1], coeff)
    return acc
