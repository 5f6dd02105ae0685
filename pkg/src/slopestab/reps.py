"""Representations of a quiver algebra over an exact field.

A representation assigns a dimension to each vertex and a (target x source)
matrix to each arrow, with matrices acting on column vectors.  Everything is
immutable and pure, so values are safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DomainError, GuardError
from .fields import QQ, FieldSpec, PrimeField
from .ktheory import K0Class
from .linalg import (
    Matrix,
    block_diag,
    identity,
    is_invertible,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    nullspace,
    row_space,
    zeros,
)
from .ordered import rat
from .quiver import Algebra, Path, relabel_algebra

HOM_SPAN_GUARD = 10**6


def _coerce_entry(field: FieldSpec, value):
    if isinstance(value, str):
        return field.from_str(value)
    if isinstance(value, bool):
        raise DomainError("booleans are not field elements")
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, Fraction):
        return field.from_fraction(value)
    raise DomainError(f"cannot coerce {value!r} into {field!r} (floats are rejected)")


@dataclass(frozen=True)
class Representation:
    algebra: Algebra
    field: FieldSpec
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]  # aligned with algebra.quiver.arrows

    def __post_init__(self) -> None:
        quiver = self.algebra.quiver
        if len(self.dims) != quiver.vertex_count:
            raise DomainError("one dimension per vertex required")
        if any(d < 0 for d in self.dims):
            raise DomainError("dimensions must be nonnegative")
        if len(self.maps) != len(quiver.arrows):
            raise DomainError("one matrix per arrow required")
        for arrow, mat in zip(quiver.arrows, self.maps):
            m, n = self.dims[arrow.target - 1], self.dims[arrow.source - 1]
            if len(mat) != m or any(len(row) != n for row in mat):
                raise DomainError(
                    f"matrix for arrow {arrow.name!r} must be {m}x{n}"
                )

    def dim(self, vertex: int) -> int:
        return self.dims[vertex - 1]

    def map_for(self, arrow_name: str) -> Matrix:
        quiver = self.algebra.quiver
        for arrow, mat in zip(quiver.arrows, self.maps):
            if arrow.name == arrow_name:
                return mat
        raise DomainError(f"unknown arrow {arrow_name!r}")

    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def path_matrix(self, path: Path) -> Matrix:
        """Matrix of a path, composing in application order."""
        source = path.source
        current = identity(self.field, self.dim(source))
        v = source
        for name in path.arrows:
            arrow = self.algebra.quiver.arrow(name)
            if arrow.source != v:
                raise DomainError(f"path breaks at arrow {name!r}")
            current = mat_mul(self.field, self.map_for(name), current, cols=self.dim(source))
            v = arrow.target
        return current

    def encoding(self) -> tuple:
        """Flattened matrix entries; the canonical sort key for representations."""
        return tuple(x for mat in self.maps for row in mat for x in row)


def representation(
    algebra: Algebra,
    field: FieldSpec,
    dims: Sequence[int],
    maps: Mapping[str, Sequence[Sequence]] | None = None,
) -> Representation:
    """Build a representation from per-arrow row lists; omitted arrows are zero."""
    maps = dict(maps or {})
    quiver = algebra.quiver
    dims_t = tuple(int(d) for d in dims)
    mats = []
    for arrow in quiver.arrows:
        m, n = dims_t[arrow.target - 1], dims_t[arrow.source - 1]
        if arrow.name in maps:
            rows = maps.pop(arrow.name)
            mat = tuple(tuple(_coerce_entry(field, x) for x in row) for row in rows)
        else:
            mat = zeros(field, m, n)
        mats.append(mat)
    if maps:
        raise DomainError(f"maps given for unknown arrows: {sorted(maps)}")
    return Representation(algebra, field, dims_t, tuple(mats))


def zero_representation(algebra: Algebra, field: FieldSpec) -> Representation:
    return representation(algebra, field, (0,) * algebra.quiver.vertex_count)


def simple_representation(algebra: Algebra, field: FieldSpec, vertex: int) -> Representation:
    dims = tuple(
        1 if v == vertex else 0 for v in range(1, algebra.quiver.vertex_count + 1)
    )
    return representation(algebra, field, dims)


def relation_failures(algebra: Algebra, V: Representation) -> list[int]:
    """Indices of relations that do not evaluate to zero on V."""
    bad = []
    for i, rel in enumerate(algebra.relations.relations):
        first_path = rel.terms[0][1]
        src, tgt = algebra.path_endpoints(first_path)
        acc = zeros(V.field, V.dim(tgt), V.dim(src))
        for coeff, path in rel.terms:
            term = mat_scale(V.field, V.field.from_fraction(coeff), V.path_matrix(path))
            acc = mat_add(V.field, acc, term)
        if not is_zero_matrix(V.field, acc):
            bad.append(i)
    return bad


def validate_representation(algebra: Algebra, V: Representation) -> bool:
    """True iff every relation evaluates to the zero matrix on V.

    Shape problems raise (they are construction errors, distinct from a
    representation that merely fails the relations).
    """
    if V.algebra != algebra:
        raise DomainError("representation belongs to a different algebra")
    return not relation_failures(algebra, V)


def dimension_vector(V: Representation) -> K0Class:
    return K0Class(V.dims)


def direct_sum(V: Representation, W: Representation) -> Representation:
    if V.algebra != W.algebra:
        raise DomainError("direct sum requires the same algebra")
    if V.field != W.field:
        raise DomainError("direct sum requires the same field")
    quiver = V.algebra.quiver
    dims = tuple(a + b for a, b in zip(V.dims, W.dims))
    mats = []
    for arrow, mv, mw in zip(quiver.arrows, V.maps, W.maps):
        shape_v = (V.dim(arrow.target), V.dim(arrow.source))
        shape_w = (W.dim(arrow.target), W.dim(arrow.source))
        mats.append(block_diag(V.field, mv, mw, shape_v, shape_w))
    return Representation(V.algebra, V.field, dims, tuple(mats))


def direct_sum_all(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise DomainError("empty direct sum needs an algebra; use zero_representation")
    acc = reps[0]
    for r in reps[1:]:
        acc = direct_sum(acc, r)
    return acc


@dataclass(frozen=True)
class Morphism:
    """A vertex-wise family of matrices intertwining two representations."""

    source: Representation
    target: Representation
    vertex_maps: tuple[Matrix, ...]

    def is_valid(self) -> bool:
        V, W = self.source, self.target
        for v in range(1, V.algebra.quiver.vertex_count + 1):
            mat = self.vertex_maps[v - 1]
            if len(mat) != W.dim(v) or any(len(row) != V.dim(v) for row in mat):
                return False
        for arrow in V.algebra.quiver.arrows:
            left = mat_mul(
                V.field,
                self.vertex_maps[arrow.target - 1],
                V.map_for(arrow.name),
                cols=V.dim(arrow.source),
            )
            right = mat_mul(
                V.field,
                W.map_for(arrow.name),
                self.vertex_maps[arrow.source - 1],
                cols=V.dim(arrow.source),
            )
            if left != right:
                return False
        return True


def hom_space(V: Representation, W: Representation) -> list[Morphism]:
    """Basis of the space of morphisms V -> W, by solving the intertwining
    system exactly."""
    if V.algebra != W.algebra:
        raise DomainError("hom space requires the same algebra")
    if V.field != W.field:
        raise DomainError("hom space requires the same field")
    field = V.field
    quiver = V.algebra.quiver
    offsets = []
    total = 0
    for v in range(1, quiver.vertex_count + 1):
        offsets.append(total)
        total += W.dim(v) * V.dim(v)

    def var(v: int, r: int, c: int) -> int:
        return offsets[v - 1] + r * V.dim(v) + c

    rows: list[list] = []
    for arrow in quiver.arrows:
        i, j = arrow.source, arrow.target
        va = V.map_for(arrow.name)
        wa = W.map_for(arrow.name)
        for r in range(W.dim(j)):
            for c in range(V.dim(i)):
                row = [field.zero] * total
                for k in range(V.dim(j)):
                    row[var(j, r, k)] = field.add(row[var(j, r, k)], va[k][c])
                for m in range(W.dim(i)):
                    row[var(i, m, c)] = field.sub(row[var(i, m, c)], wa[r][m])
                rows.append(row)

    basis_vectors = nullspace(field, tuple(tuple(r) for r in rows), total)
    morphisms = []
    for vec in basis_vectors:
        mats = []
        for v in range(1, quiver.vertex_count + 1):
            mats.append(
                tuple(
                    tuple(vec[var(v, r, c)] for c in range(V.dim(v)))
                    for r in range(W.dim(v))
                )
            )
        morphisms.append(Morphism(V, W, tuple(mats)))
    return morphisms


def _combination_maps(
    field: FieldSpec, basis: Sequence[Morphism], coeffs: Sequence
) -> list[Matrix]:
    n_vertices = len(basis[0].vertex_maps)
    out = []
    for v in range(n_vertices):
        acc = None
        for c, mor in zip(coeffs, basis):
            term = mat_scale(field, c, mor.vertex_maps[v])
            acc = term if acc is None else mat_add(field, acc, term)
        out.append(acc)
    return out


def is_isomorphic(V: Representation, W: Representation, guard: int = HOM_SPAN_GUARD) -> bool:
    """Whether some morphism in the hom space is invertible at every vertex.

    Over a prime field the whole span is scanned (guarded).  Over the
    rationals the product of vertex determinants is a polynomial of degree at
    most the total dimension D in the span coordinates, so scanning the
    integer grid {0..D}^h decides non-vanishing exactly.
    """
    if V.algebra != W.algebra or V.field != W.field:
        raise DomainError("isomorphism test requires the same algebra and field")
    if V.dims != W.dims:
        return False
    if V.total_dim() == 0:
        return True
    basis = hom_space(V, W)
    h = len(basis)
    if h == 0:
        return False
    field = V.field
    if isinstance(field, PrimeField):
        values = field.elements
    else:
        values = [Fraction(k) for k in range(V.total_dim() + 1)]
    if len(values) ** h > guard:
        raise GuardError(
            f"hom-span scan of size {len(values)}^{h} exceeds guard {guard}"
        )
    dims = V.dims
    for coeffs in itertools.product(values, repeat=h):
        if all(field.is_zero(c) for c in coeffs):
            continue
        mats = _combination_maps(field, basis, coeffs)
        if all(is_invertible(field, mats[v], dims[v]) for v in range(len(dims))):
            return True
    return False


def indecomposable_projective(
    algebra: Algebra, vertex: int, field: FieldSpec = QQ
) -> Representation:
    """The left module on basis paths starting at `vertex`, arrows acting by
    post-composition; its top is the vertex simple."""
    if not (1 <= vertex <= algebra.quiver.vertex_count):
        raise DomainError(f"vertex {vertex} out of range")
    quiver = algebra.quiver
    paths = algebra.basis_with_source(vertex)
    by_target: dict[int, list[Path]] = {v: [] for v in range(1, quiver.vertex_count + 1)}
    for p in paths:
        by_target[algebra.path_endpoints(p)[1]].append(p)
    index = {
        p: i for v in by_target for i, p in enumerate(by_target[v])
    }
    dims = tuple(len(by_target[v]) for v in range(1, quiver.vertex_count + 1))
    mats = []
    for arrow in quiver.arrows:
        m, n = dims[arrow.target - 1], dims[arrow.source - 1]
        rows = [[field.zero] * n for _ in range(m)]
        for p in by_target[arrow.source]:
            for coeff, q in algebra.left_multiply(arrow.name, p):
                rows[index[q]][index[p]] = field.add(
                    rows[index[q]][index[p]], field.from_fraction(coeff)
                )
        mats.append(tuple(tuple(r) for r in rows))
    return Representation(algebra, field, dims, tuple(mats))


def radical_subspaces(V: Representation, current: Sequence[Matrix]) -> list[Matrix]:
    """Images of all arrows applied to a vertex-wise subspace family."""
    field = V.field
    quiver = V.algebra.quiver
    out = []
    for v in range(1, quiver.vertex_count + 1):
        vectors = []
        for arrow in quiver.arrows_into(v):
            mat = V.map_for(arrow.name)
            for u in current[arrow.source - 1]:
                vectors.append(mat_vec(field, mat, u))
        out.append(row_space(field, vectors))
    return out


def loewy_structure(V: Representation) -> list[K0Class]:
    """Radical layer classes, top first; layers sum to the dimension vector."""
    field = V.field
    current: list[Matrix] = [
        identity(field, V.dim(v)) for v in range(1, V.algebra.quiver.vertex_count + 1)
    ]
    layers = []
    while any(len(b) > 0 for b in current):
        rad = radical_subspaces(V, current)
        layer = K0Class(
            tuple(len(c) - len(r) for c, r in zip(current, rad))
        )
        layers.append(layer)
        current = rad
    return layers


def relabel_representation(
    V: Representation, new_algebra: Algebra, perm: Sequence[int]
) -> Representation:
    """Transport V along a vertex relabeling (new_algebra = relabel_algebra(...))."""
    n = V.algebra.quiver.vertex_count
    dims = [0] * n
    for v in range(1, n + 1):
        dims[perm[v - 1] - 1] = V.dim(v)
    maps = {
        arrow.name: V.map_for(arrow.name) for arrow in V.algebra.quiver.arrows
    }
    return representation(new_algebra, V.field, tuple(dims), maps)


def reduce_mod(V: Representation, p: int) -> Representation:
    """Reduce a rational representation modulo p (entries must be p-integral).

    Verdicts computed after reduction certify the reduced representation.
    """
    if isinstance(V.field, PrimeField):
        raise DomainError("representation is already over a prime field")
    field = PrimeField(p)
    mats = {
        arrow.name: [[field.from_fraction(x) for x in row] for row in mat]
        for arrow, mat in zip(V.algebra.quiver.arrows, V.maps)
    }
    return representation(V.algebra, field, V.dims, mats)


__all__ = [
    "Representation",
    "Morphism",
    "representation",
    "zero_representation",
    "simple_representation",
    "relation_failures",
    "validate_representation",
    "dimension_vector",
    "direct_sum",
    "direct_sum_all",
    "hom_space",
    "is_isomorphic",
    "indecomposable_projective",
    "loewy_structure",
    "relabel_representation",
    "reduce_mod",
    "relabel_algebra",
]
