"""Exact Gaussian elimination over a :class:`Field`.

Matrices are lists of rows.  The public functions take and return
:class:`FieldElem` entries; the ``*_raw`` variants work on raw values
and are what the interpolation code calls.
"""

from __future__ import annotations

from typing import Sequence

from .fields import Field, FieldElem


def rref_raw(field: Field, rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form.  Returns ``(nonzero rows, pivot columns)``."""
    m = [list(r) for r in rows]
    zero = field._zero
    is_zero, mul, sub, inv = field._is_zero, field._mul, field._sub, field._inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [mul(s, v) for v in m[r]]
        top = m[r]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [zero if k == c else sub(a, mul(f, b)) for k, (a, b) in enumerate(zip(m[i], top))]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace_raw(field: Field, rows: Sequence[Sequence], ncols: int) -> list[list]:
    """Basis of ``{v : M v = 0}``; each vector has first nonzero entry 1."""
    red, pivots = rref_raw(field, rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field._zero] * ncols
        v[fc] = field._one
        for row, pc in zip(red, pivots):
            v[pc] = field._neg(row[fc])
        lead = next(x for x in v if not field._is_zero(x))
        s = field._inv(lead)
        basis.append([field._mul(s, x) for x in v])
    return basis


def nullspace(matrix: Sequence[Sequence[FieldElem]], field: Field | None = None, ncols: int | None = None) -> list[list[FieldElem]]:
    """Exact right nullspace of ``matrix``.

    ``field`` and ``ncols`` are only needed when ``matrix`` has no rows.
    """
    if matrix:
        field = field or matrix[0][0].field
        ncols = len(matrix[0]) if ncols is None else ncols
    if field is None or ncols is None:
        raise ValueError("empty matrix needs explicit field and ncols")
    raw = [[field.raw(e) for e in row] for row in matrix]
    return [[FieldElem(field, x) for x in v] for v in nullspace_raw(field, raw, ncols)]


def rank(matrix: Sequence[Sequence[FieldElem]]) -> int:
    if not matrix:
        return 0
    field = matrix[0][0].field
    raw = [[field.raw(e) for e in row] for row in matrix]
    return len(rref_raw(field, raw, len(matrix[0]))[0])


def mat_vec(matrix: Sequence[Sequence[FieldElem]], v: Sequence[FieldElem]) -> list[FieldElem]:
    out = []
    for row in matrix:
        acc = v[0].field.zero if v else None
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out
