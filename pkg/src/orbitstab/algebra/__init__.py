"""Exact fields, bivariate polynomials and linear algebra."""

from .fields import (
    GF,
    QQ,
    ExtensionField,
    Field,
    FieldElem,
    PrimeField,
    QuadraticField,
    Rationals,
    field_from_json,
    galois_conjugates,
    is_square,
    quadratic_has_root,
)
from .linalg import nullspace, rank, rref_raw
from .poly import BivarPoly, grlex_key, monomials_up_to, parse_poly, poly_from_json


def poly_divides(a: BivarPoly, b: BivarPoly) -> BivarPoly | None:
    """Quotient ``q`` with ``b == a * q`` if ``a`` divides ``b`` exactly."""
    return b.exact_divide(a)


def poly_pullback(f: BivarPoly, phi) -> BivarPoly:
    """``f(phi_1, phi_2)`` for a plane automorphism ``phi``."""
    fx, gy = phi.expand()
    return f.substitute(fx, gy)


__all__ = [
    "GF",
    "QQ",
    "BivarPoly",
    "ExtensionField",
    "Field",
    "FieldElem",
    "PrimeField",
    "QuadraticField",
    "Rationals",
    "field_from_json",
    "galois_conjugates",
    "grlex_key",
    "is_square",
    "monomials_up_to",
    "nullspace",
    "parse_poly",
    "poly_divides",
    "poly_from_json",
    "poly_pullback",
    "quadratic_has_root",
    "rank",
    "rref_raw",
]
