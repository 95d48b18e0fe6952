"""Exact scalar fields: Q, Q(sqrt d), F_p and F_{p^k}.

A :class:`Field` owns the arithmetic on *raw* values (plain ints,
``Fraction`` objects or tuples); :class:`FieldElem` wraps a raw value
together with its field and gives the usual operators.  Polynomial code
works on raw values directly to avoid the wrapper cost.

Raw representations
-------------------
Rationals         ``int`` or ``Fraction``
QuadraticField    ``(a, b)`` meaning ``a + b*sqrt(d)``, ``a, b`` rational
PrimeField        ``int`` in ``[0, p)``
ExtensionField    ``tuple`` of ``k`` residues, lowest degree first
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Any, Sequence

from ..errors import ParseError

Rational = int | Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        if n % f == 0:
            n //= f
        f += 1
    return True


def rational_sqrt(v: Rational) -> Fraction | None:
    """Exact square root of a rational, or ``None``."""
    v = Fraction(v)
    if v < 0:
        return None
    n, d = v.numerator, v.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse rational {text!r}") from exc


def _fmt_rational(v: Rational) -> str:
    v = Fraction(v)
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


class Field:
    """Abstract exact field.  Subclasses implement the raw operations."""

    characteristic: int = 0
    degree: int = 1  # dimension over ``base``
    native: bool = False  # raw values support exact + - * as Python numbers
    prime_modulus: int | None = None  # set for F_p: native ints reduced mod p

    # -- identity -----------------------------------------------------
    @property
    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return self.name

    @property
    def name(self) -> str:
        raise NotImplementedError

    @property
    def base(self) -> Field:
        return self

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> int | None:
        return None

    # -- raw arithmetic -----------------------------------------------
    def _add(self, a, b):
        raise NotImplementedError

    def _sub(self, a, b):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _from_rational(self, v: Rational):
        raise NotImplementedError

    def _is_zero(self, a) -> bool:
        return a == self._zero

    def _pow(self, a, n: int):
        if n < 0:
            a, n = self._inv(a), -n
        result = self._one
        while n:
            if n & 1:
                result = self._mul(result, a)
            a = self._mul(a, a)
            n >>= 1
        return result

    _zero: Any = 0
    _one: Any = 1

    # -- Galois structure over ``base`` ---------------------------------
    def _galois(self, a, i: int):
        """Image of ``a`` under the i-th element of Gal(self/base)."""
        return a

    def embed(self, a):
        """Raw base-field value -> raw value of this field."""
        return a

    def in_base(self, a) -> bool:
        return True

    def restrict(self, a):
        """Raw value lying in ``base`` -> raw base value."""
        return a

    def to_base_coords(self, a) -> list:
        return [a]

    def from_base_coords(self, coords: Sequence):
        return coords[0]

    # -- predicates ----------------------------------------------------
    def _is_square(self, a) -> bool:
        raise NotImplementedError

    def bits(self, a) -> int:
        return 0

    # -- (de)serialisation ---------------------------------------------
    def format(self, a) -> str:
        raise NotImplementedError

    def to_json(self, a) -> Any:
        return self.format(a)

    def _parse_str(self, text: str):
        raise NotImplementedError

    def _parse_list(self, items: Sequence):
        raise ParseError(f"{self.name} elements are not coefficient lists")

    def describe(self) -> dict:
        raise NotImplementedError

    # -- public helpers ------------------------------------------------
    def __call__(self, value: Any) -> FieldElem:
        return FieldElem(self, self.raw(value))

    def raw(self, value: Any):
        """Coerce ``value`` (int, Fraction, str, list, FieldElem) to a raw value."""
        if isinstance(value, FieldElem):
            if value.field == self:
                return value.v
            if value.field == self.base:
                return self.embed(value.v)
            raise TypeError(f"cannot coerce {value.field} element into {self}")
        if isinstance(value, bool):
            raise ParseError("booleans are not field elements")
        if isinstance(value, (int, Fraction)):
            return self._from_rational(value)
        if isinstance(value, str):
            return self._parse_str(value)
        if isinstance(value, (list, tuple)):
            return self._parse_list(value)
        raise ParseError(f"cannot interpret {value!r} as an element of {self.name}")

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, self._zero)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, self._one)

    def elements(self) -> list[FieldElem]:
        raise TypeError(f"{self.name} is infinite")

    def nonzero_elements(self) -> list[FieldElem]:
        return [e for e in self.elements() if e]


class Rationals(Field):
    native = True

    @property
    def key(self) -> tuple:
        return ("Q",)

    @property
    def name(self) -> str:
        return "QQ"

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        r = Fraction(1) / a
        return r.numerator if r.denominator == 1 else r

    def _from_rational(self, v):
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    def _is_square(self, a) -> bool:
        return rational_sqrt(a) is not None

    def bits(self, a) -> int:
        a = Fraction(a)
        return a.numerator.bit_length() + a.denominator.bit_length()

    def format(self, a) -> str:
        return _fmt_rational(a)

    def _parse_str(self, text):
        return self._from_rational(_parse_rational(text))

    def describe(self) -> dict:
        return {"kind": "rationals"}


QQ = Rationals()

_QUAD_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?s)?")


class QuadraticField(Field):
    """Q(sqrt d) for a squarefree integer ``d`` different from 0 and 1."""

    degree = 2

    def __init__(self, d: int):
        if d in (0, 1) or not _is_squarefree(d):
            raise ValueError(f"d={d} must be squarefree and different from 0, 1")
        self.d = d
        self._zero = (0, 0)
        self._one = (1, 0)

    @property
    def key(self) -> tuple:
        return ("Qsqrt", self.d)

    @property
    def name(self) -> str:
        return f"QQ(sqrt({self.d}))"

    @property
    def base(self) -> Field:
        return QQ

    def _add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _sub(self, a, b):
        return (a[0] - b[0], a[1] - b[1])

    def _mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def _neg(self, a):
        return (-a[0], -a[1])

    def _inv(self, a):
        n = Fraction(a[0] * a[0] - self.d * a[1] * a[1])
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return (QQ._from_rational(a[0] / n), QQ._from_rational(-a[1] / n))

    def _from_rational(self, v):
        return (QQ._from_rational(v), 0)

    def _galois(self, a, i):
        return a if i % 2 == 0 else (a[0], -a[1])

    def embed(self, a):
        return (a, 0)

    def in_base(self, a) -> bool:
        return a[1] == 0

    def restrict(self, a):
        if a[1] != 0:
            raise ValueError("element is not rational")
        return a[0]

    def to_base_coords(self, a) -> list:
        return [a[0], a[1]]

    def from_base_coords(self, coords):
        return (coords[0], coords[1])

    def _is_square(self, a) -> bool:
        x, y = Fraction(a[0]), Fraction(a[1])
        if y == 0:
            # u^2 + d v^2 + 2uv s = x: either v = 0 or u = 0
            return rational_sqrt(x) is not None or rational_sqrt(x / self.d) is not None
        n = rational_sqrt(x * x - self.d * y * y)
        if n is None:
            return False
        return any(rational_sqrt((x + sgn * n) / 2) not in (None, 0) for sgn in (1, -1))

    def bits(self, a) -> int:
        return QQ.bits(a[0]) + QQ.bits(a[1])

    def format(self, a) -> str:
        x, y = a
        if y == 0:
            return _fmt_rational(x)
        if y == 1:
            ys = "s"
        elif y == -1:
            ys = "-s"
        else:
            ys = f"{_fmt_rational(y)}*s"
        if x == 0:
            return ys
        return _fmt_rational(x) + ("" if ys.startswith("-") else "+") + ys

    def _parse_str(self, text):
        s = text.replace(" ", "").replace(f"sqrt({self.d})", "s")
        if not s:
            raise ParseError("empty field element")
        pos, x, y = 0, Fraction(0), Fraction(0)
        while pos < len(s):
            m = _QUAD_TERM.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"cannot parse {text!r} as an element of {self.name}")
            sign = -1 if m.group(1) == "-" else 1
            c = _parse_rational(m.group(2)) if m.group(2) else Fraction(1)
            if m.group(3):
                if m.group(3) == "*s" and m.group(2) is None:
                    raise ParseError(f"dangling '*' in {text!r}")
                y += sign * c
            else:
                x += sign * c
            pos = m.end()
        return (QQ._from_rational(x), QQ._from_rational(y))

    def describe(self) -> dict:
        return {"kind": "quadratic", "d": self.d}


class PrimeField(Field):
    native = True

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.prime_modulus = p

    @property
    def key(self) -> tuple:
        return ("Fp", self.p)

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    @property
    def order(self) -> int:
        return self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def _from_rational(self, v):
        v = Fraction(v)
        if v.denominator % self.p == 0:
            raise ZeroDivisionError(f"{v} has no image in {self.name}")
        return v.numerator * pow(v.denominator, -1, self.p) % self.p

    def _is_square(self, a) -> bool:
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1

    def format(self, a) -> str:
        return str(a)

    def _parse_str(self, text):
        return self._from_rational(_parse_rational(text))

    def describe(self) -> dict:
        return {"kind": "prime", "p": self.p}

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, i) for i in range(self.p)]


def _poly_divmod_p(num: list[int], den: list[int], p: int) -> list[int]:
    """Remainder of ``num`` modulo ``den`` over F_p (lists low -> high)."""
    num = [c % p for c in num]
    inv_lead = pow(den[-1], -1, p)
    dd = len(den) - 1
    for top in range(len(num) - 1, dd - 1, -1):
        c = num[top] * inv_lead % p
        if c:
            for i, dc in enumerate(den):
                num[top - dd + i] = (num[top - dd + i] - c * dc) % p
    rem = num[:dd]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


def is_irreducible_mod_p(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive search for a monic divisor of degree <= k/2."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_divmod_p(list(modulus), list(low) + [1], p):
                return False
    return True


_EXT_TERM = re.compile(r"([+-]?)(\d+)?(\*?t(?:\^(\d+))?)?")


class ExtensionField(Field):
    """F_p[t]/(modulus) with ``modulus`` monic irreducible of degree k >= 2."""

    def __init__(self, p: int, modulus: Sequence[int]):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 2 (coefficients low -> high)")
        if not is_irreducible_mod_p(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.characteristic = p
        self._base = PrimeField(p)
        self._zero = (0,) * self.degree
        self._one = (1,) + (0,) * (self.degree - 1)

    @property
    def key(self) -> tuple:
        return ("Fq", self.p, self.modulus)

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.degree})"

    @property
    def base(self) -> Field:
        return self._base

    @property
    def order(self) -> int:
        return self.p**self.degree

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        k, p, mod = self.degree, self.p, self.modulus
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top] % p
            if c:
                for i in range(k):
                    prod[top - k + i] -= c * mod[i]
        return tuple(c % p for c in prod[:k])

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        return self._pow(a, self.order - 2)

    def _from_rational(self, v):
        return (self._base._from_rational(v),) + (0,) * (self.degree - 1)

    def _galois(self, a, i):
        for _ in range(i % self.degree):
            a = self._pow(a, self.p)
        return a

    def embed(self, a):
        return (a % self.p,) + (0,) * (self.degree - 1)

    def in_base(self, a) -> bool:
        return not any(a[1:])

    def restrict(self, a):
        if any(a[1:]):
            raise ValueError("element is not in the prime field")
        return a[0]

    def to_base_coords(self, a) -> list:
        return list(a)

    def from_base_coords(self, coords):
        return tuple(int(c) % self.p for c in coords)

    def _is_square(self, a) -> bool:
        if not any(a) or self.p == 2:
            return True
        return self._pow(a, (self.order - 1) // 2) == self._one

    def format(self, a) -> str:
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "t" if i == 1 else f"t^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def to_json(self, a) -> Any:
        return list(a)

    def _parse_str(self, text):
        s = text.replace(" ", "")
        coeffs = [0] * self.degree
        pos = 0
        if not s:
            raise ParseError("empty field element")
        while pos < len(s):
            m = _EXT_TERM.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"cannot parse {text!r} as an element of {self.name}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            if m.group(3):
                e = int(m.group(4)) if m.group(4) else 1
            else:
                e = 0
            # reduce t^e for e >= k
            mono = self._pow((0, 1) + (0,) * (self.degree - 2), e) if e else self._one
            for i in range(self.degree):
                coeffs[i] += sign * c * mono[i]
            pos = m.end()
        return tuple(c % self.p for c in coeffs)

    def _parse_list(self, items):
        if len(items) > self.degree:
            raise ParseError(f"too many coefficients for {self.name}: {items!r}")
        try:
            vals = [int(c) for c in items]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad coefficient list {items!r}") from exc
        vals += [0] * (self.degree - len(vals))
        return tuple(c % self.p for c in vals)

    def describe(self) -> dict:
        return {"kind": "extension", "p": self.p, "modulus": list(self.modulus)}

    def generator(self) -> FieldElem:
        return FieldElem(self, (0, 1) + (0,) * (self.degree - 2))

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, tuple(c)) for c in itertools.product(range(self.p), repeat=self.degree)]


def GF(q: int) -> PrimeField | ExtensionField:
    """Finite field of order ``q``, using the first irreducible modulus found."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1 or not _is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    if k == 1:
        return PrimeField(p)
    for low in itertools.product(range(p), repeat=k):
        modulus = list(low) + [1]
        if low[0] and is_irreducible_mod_p(modulus, p):
            return ExtensionField(p, modulus)
    raise AssertionError("no irreducible polynomial found")  # unreachable


def field_from_json(spec: dict) -> Field:
    kind = spec.get("kind")
    try:
        if kind == "rationals":
            return QQ
        if kind == "quadratic":
            return QuadraticField(int(spec["d"]))
        if kind == "prime":
            return PrimeField(int(spec["p"]))
        if kind == "extension":
            if "modulus" in spec:
                return ExtensionField(int(spec["p"]), [int(c) for c in spec["modulus"]])
            return GF(int(spec["p"]) ** int(spec["k"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad field declaration {spec!r}: {exc}") from exc
    raise ParseError(f"unknown field kind {kind!r}")


class FieldElem:
    """An element of a :class:`Field`; immutable and hashable."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, v):
        self.field = field
        self.v = v

    def _pair(self, other):
        f = self.field
        if isinstance(other, FieldElem):
            g = other.field
            if g is f or g == f:
                return f, self.v, other.v
            if g == f.base:
                return f, self.v, f.embed(other.v)
            if f == g.base:
                return g, g.embed(self.v), other.v
            raise TypeError(f"incompatible fields {f} and {g}")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return f, self.v, f._from_rational(other)
        return None

    def __add__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._sub(a, b))

    def __rsub__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._sub(b, a))

    def __mul__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._mul(a, f._inv(b)))

    def __rtruediv__(self, other):
        t = self._pair(other)
        if t is None:
            return NotImplemented
        f, a, b = t
        return FieldElem(f, f._mul(b, f._inv(a)))

    def __neg__(self):
        return FieldElem(self.field, self.field._neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return FieldElem(self.field, self.field._pow(self.v, n))

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field._inv(self.v))

    def __eq__(self, other) -> bool:
        try:
            t = self._pair(other)
        except TypeError:
            return False
        if t is None:
            return NotImplemented
        return t[1] == t[2]

    def __hash__(self) -> int:
        return hash((self.field.key, self.v))

    def __bool__(self) -> bool:
        return not self.field._is_zero(self.v)

    def is_zero(self) -> bool:
        return self.field._is_zero(self.v)

    def __repr__(self) -> str:
        return self.field.format(self.v)

    __str__ = __repr__

    def to_json(self):
        return self.field.to_json(self.v)

    def bits(self) -> int:
        return self.field.bits(self.v)

    def in_base(self) -> bool:
        return self.field.in_base(self.v)

    def galois(self, i: int) -> FieldElem:
        return FieldElem(self.field, self.field._galois(self.v, i))

    def conjugates(self) -> list[FieldElem]:
        return galois_conjugates(self)

    def is_square(self) -> bool:
        return self.field._is_square(self.v)

    def to_fraction(self) -> Fraction:
        """Value as a Fraction; only for elements of Q or rational elements of Q(sqrt d)."""
        f = self.field
        if isinstance(f, Rationals):
            return Fraction(self.v)
        if isinstance(f, QuadraticField) and f.in_base(self.v):
            return Fraction(self.v[0])
        raise ValueError(f"{self} is not rational")


def galois_conjugates(x: FieldElem) -> list[FieldElem]:
    """Full orbit of ``x`` under Gal(field/base), without repetition."""
    f = x.field
    out: list[FieldElem] = []
    seen = set()
    for i in range(f.degree):
        c = f._galois(x.v, i)
        if c not in seen:
            seen.add(c)
            out.append(FieldElem(f, c))
    return out


def is_square(x: FieldElem) -> bool:
    return x.is_square()


def quadratic_has_root(mu: FieldElem) -> bool:
    """Whether x^2 + mu*x + 1 has a root in the field of ``mu``."""
    f = mu.field
    if f.is_finite:
        return any(not (e * e + mu * e + 1) for e in f.elements())
    return (mu * mu - 4).is_square()




