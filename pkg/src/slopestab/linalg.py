"""Dense exact linear algebra over a field object from `fields`.

Matrices are tuples of row tuples.  A matrix with zero rows is (); a matrix
with zero columns has empty rows.  Shapes become ambiguous exactly in those
degenerate cases, so the operations that need it take explicit dimensions.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import FieldSpec

Vector = tuple
Matrix = tuple


def matrix(rows: Iterable[Sequence]) -> Matrix:
    out = tuple(tuple(r) for r in rows)
    widths = {len(r) for r in out}
    if len(widths) > 1:
        raise ValueError("ragged matrix")
    return out


def zeros(field: FieldSpec, m: int, n: int) -> Matrix:
    return tuple((field.zero,) * n for _ in range(m))


def identity(field: FieldSpec, n: int) -> Matrix:
    return tuple(
        tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)
    )


def mat_mul(field: FieldSpec, a: Matrix, b: Matrix, *, cols: int | None = None) -> Matrix:
    """a @ b; `cols` is required when b has zero rows (width unrecoverable)."""
    k = len(a[0]) if a else len(b)
    if len(b) != k and a:
        raise ValueError(f"inner dimension mismatch: {k} vs {len(b)}")
    n = len(b[0]) if b else cols
    if n is None:
        raise ValueError("cols= required to multiply against a 0-row matrix")
    out = []
    for row in a:
        acc = [field.zero] * n
        for x, brow in zip(row, b):
            if field.is_zero(x):
                continue
            for j in range(n):
                acc[j] = field.add(acc[j], field.mul(x, brow[j]))
        out.append(tuple(acc))
    return tuple(out)


def mat_vec(field: FieldSpec, a: Matrix, v: Sequence) -> Vector:
    return tuple(
        _dot(field, row, v) for row in a
    )


def _dot(field: FieldSpec, u: Sequence, v: Sequence):
    acc = field.zero
    for x, y in zip(u, v):
        acc = field.add(acc, field.mul(x, y))
    return acc


def mat_add(field: FieldSpec, a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_scale(field: FieldSpec, c, a: Matrix) -> Matrix:
    return tuple(tuple(field.mul(c, x) for x in row) for row in a)


def mat_neg(field: FieldSpec, a: Matrix) -> Matrix:
    return tuple(tuple(field.neg(x) for x in row) for row in a)


def is_zero_matrix(field: FieldSpec, a: Matrix) -> bool:
    return all(field.is_zero(x) for row in a for x in row)


def rref(field: FieldSpec, rows: Iterable[Sequence]) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form; returns (rows incl. zero rows, pivot columns)."""
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(work)) if not field.is_zero(work[i][col])), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        lead_inv = field.inv(work[r][col])
        work[r] = [field.mul(lead_inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and not field.is_zero(work[i][col]):
                f = work[i][col]
                work[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(work[i], work[r])]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return tuple(tuple(row) for row in work), tuple(pivots)


def rank(field: FieldSpec, a: Matrix) -> int:
    return len(rref(field, a)[1])


def row_space(field: FieldSpec, rows: Iterable[Sequence]) -> Matrix:
    """Canonical (RREF, zero rows dropped) basis of the row span."""
    reduced, pivots = rref(field, rows)
    return reduced[: len(pivots)]


def in_row_space(field: FieldSpec, basis: Matrix, v: Sequence) -> bool:
    """Membership test against an RREF basis."""
    work = list(v)
    for row in basis:
        piv = next((j for j, x in enumerate(row) if not field.is_zero(x)), None)
        if piv is None or field.is_zero(work[piv]):
            continue
        f = work[piv]
        work = [field.sub(x, field.mul(f, y)) for x, y in zip(work, row)]
    return all(field.is_zero(x) for x in work)


def nullspace(field: FieldSpec, a: Matrix, ncols: int) -> list[Vector]:
    """Basis of {x : a x = 0} in a space of dimension ncols."""
    reduced, pivots = rref(field, a)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [field.zero] * ncols
        vec[f] = field.one
        for row_idx, p in enumerate(pivots):
            vec[p] = field.neg(reduced[row_idx][f])
        basis.append(tuple(vec))
    return basis


def solve(field: FieldSpec, a: Matrix, b: Sequence, ncols: int) -> Vector | None:
    """One solution of a x = b (free coordinates zero), or None."""
    augmented = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    reduced, pivots = rref(field, augmented)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row_idx, p in enumerate(pivots):
        x[p] = reduced[row_idx][ncols]
    return tuple(x)


def is_invertible(field: FieldSpec, a: Matrix, n: int) -> bool:
    """Whether the n x n matrix a is invertible; the empty matrix (n=0) is."""
    if n == 0:
        return True
    return rank(field, a) == n


def block_diag(field: FieldSpec, a: Matrix, b: Matrix, shape_a: tuple[int, int], shape_b: tuple[int, int]) -> Matrix:
    ma, na = shape_a
    mb, nb = shape_b
    top = tuple(tuple(row) + (field.zero,) * nb for row in a)
    bottom = tuple((field.zero,) * na + tuple(row) for row in b)
    return top + bottom


def coords_in_basis(field: FieldSpec, basis: Matrix, v: Sequence, ambient: int) -> Vector | None:
    """Coordinates of v in the span of `basis` rows, or None if outside."""
    if not basis:
        return () if all(field.is_zero(x) for x in v) else None
    system = tuple(
        tuple(basis[i][j] for i in range(len(basis))) for j in range(ambient)
    )
    return solve(field, system, tuple(v), len(basis))
