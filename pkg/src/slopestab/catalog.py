"""Built-in worked instances: the rank-one principal block algebra with its
five indecomposables and named short exact sequences, rank-two Verma-class
data with certificate search, poset incidence algebras, and the generic
multiplicity-weighted slope constructor.

Weight conventions: weights live in fundamental-weight coordinates ordered by
a fixed choice of Dynkin node order, compared lexicographically.  Labels are
indexed from the dominant weight downward (lambda_0 maximal in the dominance
order); the rank-one block identifies the weight lattice with Z via the
single fundamental weight.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .fields import QQ, FieldSpec
from .ktheory import (
    K0Class,
    SimpleLabelSet,
    SlopeData,
    Verdict,
    k0_verdict,
)
from .lp import lp_maximize
from .ordered import OrderedSpace, OrderedVector, Rational, rat
from .quiver import (
    Algebra,
    Arrow,
    Path,
    Quiver,
    Relation,
    RelationSet,
    algebra_basis,
)
from .reps import Morphism, Representation, representation


@dataclass(frozen=True)
class WeightData:
    """Labels with weight vectors in a lexicographically ordered space, plus a
    slot dimension for the slope parameter vector x (one rational per label)."""

    space: OrderedSpace
    labels: tuple[str, ...]
    weights: tuple[OrderedVector, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.weights):
            raise DomainError("one weight vector per label required")
        for w in self.weights:
            self.space.check_member(w)

    def __len__(self) -> int:
        return len(self.labels)


def slope_from_weights(data: WeightData, x: Sequence[Rational]) -> SlopeData:
    """The multiplicity-weighted slope: c(label j) = x_j * weight_j, d = 1."""
    if len(x) != len(data):
        raise DomainError("need one slope coefficient per label")
    labels = SimpleLabelSet(data.labels, data.weights)
    c_values = tuple(w.scale(rat(xj)) for w, xj in zip(data.weights, x))
    d_values = (Fraction(1),) * len(data)
    return SlopeData(labels, data.space, c_values, d_values)


def jordan_holder_slope(
    labels: SimpleLabelSet,
    space: OrderedSpace,
    f: Sequence[Rational],
    g: Sequence[Rational],
    embedding: Sequence[OrderedVector],
) -> SlopeData:
    """Slope data for a finite-length category: c(label) = f(label) *
    embedding(label) and d(label) = g(label) > 0."""
    n = len(labels)
    if len(f) != n or len(g) != n or len(embedding) != n:
        raise DomainError("f, g, embedding must each assign one value per label")
    g_values = tuple(rat(v) for v in g)
    if any(v <= 0 for v in g_values):
        raise DomainError("g must be positive everywhere")
    c_values = tuple(vec.scale(rat(fv)) for vec, fv in zip(embedding, f))
    return SlopeData(labels, space, c_values, g_values)


@dataclass(frozen=True)
class ExactSequence:
    """A named short exact sequence with explicit injection and surjection."""

    sub: str
    middle: str
    quotient: str
    injection: Morphism
    surjection: Morphism


@dataclass
class CatalogEntry:
    name: str
    algebra: Algebra
    field: FieldSpec
    representations: dict[str, Representation]
    k0_labels: SimpleLabelSet
    weight_data: WeightData
    exact_sequences: tuple[ExactSequence, ...]


# Rank-one block: vertex 1 carries L(-2), vertex 2 carries L(0).
_SL2_K0_LABELS = SimpleLabelSet(
    ("L(-2)", "L(0)"),
    (OrderedVector.of([-2]), OrderedVector.of([0])),
)


def sl2_block(field: FieldSpec = QQ) -> CatalogEntry:
    """The five-dimensional block algebra (two vertices, arrows a: 1 -> 2 and
    b: 2 -> 1, composite "apply b then a" vanishing) with its five
    indecomposables and four short exact sequences."""
    quiver = Quiver(2, (Arrow("a", 1, 2), Arrow("b", 2, 1)))
    relation = Relation(((Fraction(1), Path(2, ("b", "a"))),))
    algebra = algebra_basis(quiver, RelationSet((relation,)))
    assert algebra.dimension == 5

    reps = {
        "L(0)": representation(algebra, field, (0, 1)),
        "L(-2)": representation(algebra, field, (1, 0)),
        "M(0)": representation(algebra, field, (1, 1), {"a": [[0]], "b": [[1]]}),
        "M*(0)": representation(algebra, field, (1, 1), {"a": [[1]], "b": [[0]]}),
        "P(-2)": representation(
            algebra, field, (2, 1), {"a": [[1, 0]], "b": [[0], [1]]}
        ),
    }

    def morphism(
        src: str,
        dst: str,
        maps_1: Sequence[Sequence[int]],
        maps_2: Sequence[Sequence[int]],
    ) -> Morphism:
        def coerce(rows: Sequence[Sequence[int]]):
            return tuple(tuple(field.from_int(x) for x in row) for row in rows)

        return Morphism(reps[src], reps[dst], (coerce(maps_1), coerce(maps_2)))

    # Empty-shaped maps: [] is a 0-row matrix, [[]] is one row of width 0.
    sequences = (
        ExactSequence(
            "L(-2)", "M(0)", "L(0)",
            morphism("L(-2)", "M(0)", [[1]], [[]]),
            morphism("M(0)", "L(0)", [], [[1]]),
        ),
        ExactSequence(
            "L(0)", "M*(0)", "L(-2)",
            morphism("L(0)", "M*(0)", [[]], [[1]]),
            morphism("M*(0)", "L(-2)", [[1]], []),
        ),
        ExactSequence(
            "L(-2)", "P(-2)", "M*(0)",
            morphism("L(-2)", "P(-2)", [[0], [1]], [[]]),
            morphism("P(-2)", "M*(0)", [[1, 0]], [[1]]),
        ),
        ExactSequence(
            "M(0)", "P(-2)", "L(-2)",
            morphism("M(0)", "P(-2)", [[0], [1]], [[1]]),
            morphism("P(-2)", "L(-2)", [[1, 0]], []),
        ),
    )

    weight_data = WeightData(
        OrderedSpace(1),
        ("L(0)", "L(-2)"),
        (OrderedVector.of([0]), OrderedVector.of([-2])),
    )
    return CatalogEntry(
        "sl2", algebra, field, reps, _SL2_K0_LABELS, weight_data, sequences
    )


def sl2_slope(x: Sequence[Rational]) -> SlopeData:
    """Slope data for the rank-one block from x = (x0, x1), indexed by label
    order lambda_0 = 0, lambda_1 = -2; x1 is the only coefficient that
    matters because lambda_0 = 0."""
    if len(x) != 2:
        raise DomainError("sl2 slope takes a pair of rationals")
    x0, x1 = (rat(v) for v in x)
    c_values = (
        OrderedVector.of([-2 * x1]),  # label L(-2), weight -2
        OrderedVector.of([0 * x0]),  # label L(0), weight 0
    )
    return SlopeData(_SL2_K0_LABELS, OrderedSpace(1), c_values, (Fraction(1), Fraction(1)))


# Weyl machinery for the rank-two block: simple reflections acting on
# fundamental-weight coordinates (m1, m2).
_GEN_MATRICES = {
    1: ((Fraction(-1), Fraction(0)), (Fraction(1), Fraction(1))),
    2: ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(-1))),
}
_RHO = (Fraction(1), Fraction(1))


def _mat_apply(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _mat_prod(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
        for i in range(2)
    )


def _weyl_elements() -> dict[tuple, tuple[int, tuple[int, ...]]]:
    """All group elements as action matrices, with length and one reduced word."""
    identity = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    elements = {identity: (0, ())}
    frontier = [identity]
    length = 0
    while frontier:
        length += 1
        next_frontier = []
        for mat in frontier:
            word = elements[mat][1]
            for gen, gen_mat in _GEN_MATRICES.items():
                new = _mat_prod(mat, gen_mat)
                if new not in elements:
                    elements[new] = (length, word + (gen,))
                    next_frontier.append(new)
        frontier = next_frontier
    return elements


def _word_to_matrix(word: Iterable[int]):
    mat = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for gen in word:
        mat = _mat_prod(mat, _GEN_MATRICES[gen])
    return mat


def _bruhat_le(u_mat, w_mat, elements) -> bool:
    """Subword criterion on one fixed reduced word of w."""
    u_len = elements[u_mat][0]
    w_word = elements[w_mat][1]
    for r in range(1 << len(w_word)):
        sub = tuple(w_word[i] for i in range(len(w_word)) if r >> i & 1)
        if len(sub) == u_len and _word_to_matrix(sub) == u_mat:
            return True
    return False


def _dot_action(mat, lam):
    shifted = tuple(a + b for a, b in zip(lam, _RHO))
    moved = _mat_apply(mat, shifted)
    return tuple(a - b for a, b in zip(moved, _RHO))


def _dominance_root_coords(diff):
    """Simple-root coordinates of a weight difference in rank two."""
    m1, m2 = diff
    return (2 * m1 + m2) / 3, (m1 + 2 * m2) / 3


@dataclass(frozen=True)
class VermaSystem:
    """Weight data together with the Verma classes and, per Verma, the classes
    of its individual Verma submodules (the default subobject sets)."""

    weights: WeightData
    verma_classes: tuple[K0Class, ...]
    default_subobject_sets: tuple[tuple[K0Class, ...], ...]


_SL3_LAMBDAS = (
    (Fraction(0), Fraction(0)),
    (Fraction(-2), Fraction(1)),
    (Fraction(1), Fraction(-2)),
    (Fraction(0), Fraction(-3)),
    (Fraction(-3), Fraction(0)),
    (Fraction(-2), Fraction(-2)),
)


def sl3_data() -> VermaSystem:
    """The six-weight rank-two principal block at the level of classes: Verma
    multiplicities from the Bruhat order (all multiplicities one at this
    rank), with each Verma's submodule-Verma classes as its default
    subobject-class set."""
    elements = _weyl_elements()
    by_lambda = {}
    for mat in elements:
        lam = _dot_action(mat, (Fraction(0), Fraction(0)))
        by_lambda[lam] = mat
    if set(by_lambda) != set(_SL3_LAMBDAS):
        raise AssertionError("dot-action orbit does not match the catalog weights")
    mats = [by_lambda[lam] for lam in _SL3_LAMBDAS]

    for lam in _SL3_LAMBDAS[1:]:
        diff = tuple(a - b for a, b in zip(_SL3_LAMBDAS[0], lam))
        c1, c2 = _dominance_root_coords(diff)
        assert c1 >= 0 and c2 >= 0, "lambda_0 must dominate every block weight"

    n = len(_SL3_LAMBDAS)
    ge_table = [
        [_bruhat_le(mats[k], mats[j], elements) for j in range(n)] for k in range(n)
    ]
    verma_classes = tuple(
        K0Class(tuple(1 if ge_table[k][j] else 0 for j in range(n)))
        for k in range(n)
    )
    default_sets = tuple(
        tuple(
            sorted(
                verma_classes[j] for j in range(n) if ge_table[k][j] and j != k
            )
        )
        for k in range(n)
    )
    weights = WeightData(
        OrderedSpace(2),
        tuple(f"l{k}" for k in range(n)),
        tuple(OrderedVector.of(lam) for lam in _SL3_LAMBDAS),
    )
    return VermaSystem(weights, verma_classes, default_sets)


def find_stability_certificate(
    target: K0Class,
    subobject_classes: Iterable[K0Class],
    data: WeightData,
) -> tuple[Fraction, ...] | None:
    """Exact rational x making the target class stable against the supplied
    subobject classes under the multiplicity-weighted slope, or None.

    Lex-positivity of the vector character is decided by level: first try
    forcing every first coordinate positive (one LP); then sweep the
    remaining sign patterns (coordinate ell is the first nonzero one).
    """
    m = len(data)
    k = data.space.dimension
    if not target.is_effective() or len(target) != m:
        raise DomainError("target must be an effective class over the weight labels")
    betas = list(subobject_classes)
    for beta in betas:
        if (
            len(beta) != m
            or not beta.is_effective()
            or not target.dominates(beta)
            or beta == target
        ):
            raise DomainError(
                f"malformed subobject class {beta.multiplicities}: must lie strictly "
                "inside the target box"
            )
    if not betas:
        return (Fraction(0),) * m

    d_target = target.total()
    # theta(beta) coordinate c is a linear form in x:
    #   sum_j weights[j][c] * (d(beta) * target_j - d(target) * beta_j) * x_j
    coeff = [
        [
            [
                data.weights[j].coords[c]
                * (beta.total() * target.multiplicities[j] - d_target * beta.multiplicities[j])
                for j in range(m)
            ]
            for c in range(k)
        ]
        for beta in betas
    ]

    def try_pattern(levels: Sequence[int]) -> tuple[Fraction, ...] | None:
        nvars = m + 1
        one = Fraction(1)
        ineqs: list[tuple[list[Fraction], Fraction]] = []
        eqs: list[tuple[list[Fraction], Fraction]] = []
        for b_idx, level in enumerate(levels):
            for c in range(level):
                eqs.append((coeff[b_idx][c] + [Fraction(0)], Fraction(0)))
            row = [-v for v in coeff[b_idx][level]] + [one]
            ineqs.append((row, Fraction(0)))
        for j in range(m):
            unit = [Fraction(0)] * nvars
            unit[j] = one
            ineqs.append((list(unit), one))
            ineqs.append(([-v for v in unit], one))
        t_row = [Fraction(0)] * nvars
        t_row[m] = one
        ineqs.append((t_row, one))
        result = lp_maximize([Fraction(0)] * m + [one], ineqs, eqs)
        if result is None or result[0] <= 0:
            return None
        return tuple(result[1][:m])

    solution = try_pattern([0] * len(betas))
    if solution is None:
        for levels in itertools.product(range(k), repeat=len(betas)):
            if all(l == 0 for l in levels):
                continue
            solution = try_pattern(levels)
            if solution is not None:
                break
    if solution is None:
        return None
    slope = slope_from_weights(data, solution)
    verdict = k0_verdict(target, betas, slope)
    assert verdict is Verdict.STABLE, "certificate failed verification"
    return solution


def poset_algebra(elements: Sequence[str], order_pairs: Iterable[tuple[str, str]]) -> Algebra:
    """Incidence-style algebra of a finite poset: quiver on the covering
    relation, one commutativity relation per pair of parallel length-2 paths.

    For the catalog posets (and any poset whose parallel saturated chains are
    linked by elementary diamond moves) the quotient dimension equals the
    number of intervals x <= y.
    """
    elements = list(elements)
    if len(set(elements)) != len(elements):
        raise DomainError("poset elements must be distinct")
    index = {x: i + 1 for i, x in enumerate(elements)}
    le = {(x, x) for x in elements}
    for x, y in order_pairs:
        if x not in index or y not in index:
            raise DomainError(f"order pair ({x}, {y}) uses unknown elements")
        le.add((x, y))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(le), repeat=2):
            if b == c and (a, d) not in le:
                le.add((a, d))
                changed = True
    for x, y in le:
        if x != y and (y, x) in le:
            raise DomainError(f"not a poset: {x} and {y} are mutually comparable")

    def strictly_between(x: str, y: str) -> bool:
        return any(
            z != x and z != y and (x, z) in le and (z, y) in le for z in elements
        )

    covers = {
        (x, y)
        for x in elements
        for y in elements
        if x != y and (x, y) in le and not strictly_between(x, y)
    }
    ordered_covers = sorted(covers, key=lambda xy: (index[xy[0]], index[xy[1]]))
    arrow_name = {(x, y): f"{x}->{y}" for x, y in ordered_covers}
    quiver = Quiver(
        len(elements),
        tuple(Arrow(arrow_name[(x, y)], index[x], index[y]) for x, y in ordered_covers),
    )

    relations = []
    for x in elements:
        for z in elements:
            paths = [
                Path(index[x], (arrow_name[(x, y)], arrow_name[(y, z)]))
                for y in elements
                if (x, y) in covers and (y, z) in covers
            ]
            for other in paths[1:]:
                relations.append(
                    Relation(((Fraction(1), paths[0]), (Fraction(-1), other)))
                )
    return algebra_basis(quiver, RelationSet(tuple(relations)))
