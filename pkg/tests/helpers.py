"""Shared test utilities: random exact data and independent oracles.

Oracles here deliberately avoid the library's own code paths (different
enumeration strategies, different order criteria) so that agreement is
evidence, not tautology.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from slopestab import (
    GF,
    K0Class,
    OrderedSpace,
    OrderedVector,
    Representation,
    SimpleLabelSet,
    SlopeData,
)


def rand_fraction(rng: random.Random, lo: int = -9, hi: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_positive_fraction(rng: random.Random, hi: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(1, hi), rng.randint(1, den))


def rand_vector(rng: random.Random, dim: int) -> OrderedVector:
    return OrderedVector.of([rand_fraction(rng) for _ in range(dim)])


def rand_slope_data(rng: random.Random, n_labels: int, dim: int) -> SlopeData:
    labels = SimpleLabelSet(tuple(f"s{i}" for i in range(n_labels)))
    space = OrderedSpace(dim)
    c_values = tuple(rand_vector(rng, dim) for _ in range(n_labels))
    d_values = tuple(rand_positive_fraction(rng) for _ in range(n_labels))
    return SlopeData(labels, space, c_values, d_values)


def rand_effective_class(rng: random.Random, n: int, max_mult: int = 4) -> K0Class:
    while True:
        cls = K0Class.of(rng.randint(0, max_mult) for _ in range(n))
        if not cls.is_zero():
            return cls


def sl2_f2_universe(algebra) -> list[Representation]:
    """Every valid representation of the two-vertex block with dims <= (2,2)
    over GF(2), built by direct matrix iteration."""
    field = GF(2)
    out = []
    for d1, d2 in itertools.product(range(3), repeat=2):
        if d1 == 0 and d2 == 0:
            continue
        a_shapes = list(itertools.product(field.elements, repeat=d2 * d1))
        b_shapes = list(itertools.product(field.elements, repeat=d1 * d2))
        for a_flat in a_shapes:
            a_mat = tuple(
                tuple(a_flat[r * d1 : (r + 1) * d1]) for r in range(d2)
            )
            for b_flat in b_shapes:
                b_mat = tuple(
                    tuple(b_flat[r * d2 : (r + 1) * d2]) for r in range(d1)
                )
                composite = [
                    [
                        sum(a_mat[i][k] * b_mat[k][j] for k in range(d1)) % 2
                        for j in range(d2)
                    ]
                    for i in range(d2)
                ]
                if any(x for row in composite for x in row):
                    continue
                out.append(
                    Representation(algebra, field, (d1, d2), (a_mat, b_mat))
                )
    return out


def brute_force_subrep_classes(V: Representation) -> set[tuple[int, ...]]:
    """Independent subobject-class oracle: subspaces as closures of vector
    subsets, invariance by explicit span membership."""
    field = V.field
    p = field.p

    def all_vectors(n: int) -> list[tuple[int, ...]]:
        return [tuple(v) for v in itertools.product(range(p), repeat=n)]

    def span(vectors: list[tuple[int, ...]], n: int) -> frozenset[tuple[int, ...]]:
        points = {tuple([0] * n)}
        for _ in range(len(vectors) + 1):
            new = set(points)
            for x in points:
                for v in vectors:
                    for c in range(p):
                        new.add(tuple((a + c * b) % p for a, b in zip(x, v)))
            if new == points:
                break
            points = new
        return frozenset(points)

    def subspaces(n: int) -> set[frozenset[tuple[int, ...]]]:
        vectors = all_vectors(n)
        found = set()
        for r in range(n + 1):
            for subset in itertools.combinations(vectors, r):
                found.add(span(list(subset), n))
        return found

    def apply(mat, vec, rows):
        return tuple(
            sum(mat[i][j] * vec[j] for j in range(len(vec))) % p for i in range(rows)
        )

    def space_dim(points: frozenset, n: int) -> int:
        size = len(points)
        dim = 0
        while p**dim < size:
            dim += 1
        assert p**dim == size
        return dim

    quiver = V.algebra.quiver
    per_vertex = [subspaces(V.dim(v)) for v in range(1, quiver.vertex_count + 1)]
    classes = set()
    for combo in itertools.product(*per_vertex):
        ok = True
        for arrow in quiver.arrows:
            mat = V.map_for(arrow.name)
            rows = V.dim(arrow.target)
            for vec in combo[arrow.source - 1]:
                if apply(mat, vec, rows) not in combo[arrow.target - 1]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            classes.add(
                tuple(
                    space_dim(points, V.dim(v + 1))
                    for v, points in enumerate(combo)
                )
            )
    return classes


# Independent rank-two Weyl oracle: elements as permutation-free matrices,
# Bruhat order via transitive closure over reflection covers.
_S1 = ((Fraction(-1), Fraction(0)), (Fraction(1), Fraction(1)))
_S2 = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(-1)))


def _mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def weyl_oracle():
    """Returns (elements with lengths, strict Bruhat less-than relation,
    dot-action images of zero)."""
    identity = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    lengths = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for mat in frontier:
            for gen in (_S1, _S2):
                new = _mul(mat, gen)
                if new not in lengths:
                    lengths[new] = lengths[mat] + 1
                    nxt.append(new)
        frontier = nxt

    # Reflections: conjugates of the generators.
    reflections = set()
    for w in lengths:
        w_inv = next(u for u in lengths if _mul(w, u) == identity)
        for gen in (_S1, _S2):
            reflections.add(_mul(_mul(w, gen), w_inv))

    covers = set()
    for w in lengths:
        for t in reflections:
            wt = _mul(w, t)
            if lengths[wt] == lengths[w] + 1:
                covers.add((w, wt))
    less = set(covers)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(less), repeat=2):
            if b == c and (a, d) not in less:
                less.add((a, d))
                changed = True

    rho = (Fraction(1), Fraction(1))
    def dot(mat):
        shifted = tuple(x + r for x, r in zip((Fraction(0), Fraction(0)), rho))
        moved = tuple(
            sum(mat[i][j] * shifted[j] for j in range(2)) for i in range(2)
        )
        return tuple(x - r for x, r in zip(moved, rho))

    images = {mat: dot(mat) for mat in lengths}
    return lengths, less, images
