"""Exhaustive subrepresentation enumeration and stability data over finite
fields: verdicts, maximal destabilizers, Harder-Narasimhan filtrations,
stable-factor refinements, and S-equivalence.

Enumeration is brute force over vertex-wise subspace tuples, which is why a
prime field is required; rational representations are handled by reducing
modulo a prime first (see `reps.reduce_mod`).  All outputs are canonically
sorted, so results do not depend on internal enumeration order; tests
re-check that by shuffling the order through the optional `rng` hooks.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, GuardError
from .fields import PrimeField
from .ktheory import (
    K0Class,
    Ordering,
    SlopeData,
    SlopeValue,
    Verdict,
    compare_slopes,
    slope_value,
)
from .linalg import (
    Matrix,
    coords_in_basis,
    identity,
    in_row_space,
    mat_vec,
    row_space,
)
from .reps import Representation, dimension_vector

SUBSPACE_GUARD = 10**7


@dataclass(frozen=True)
class SubrepFamily:
    """A vertex-wise family of subspaces, each given by canonical RREF rows,
    closed under all arrow maps of its representation."""

    vertex_bases: tuple[Matrix, ...]

    def dims(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.vertex_bases)

    def k0_class(self) -> K0Class:
        return K0Class(self.dims())

    def encoding(self) -> tuple:
        return self.vertex_bases


def zero_family(V: Representation) -> SubrepFamily:
    return SubrepFamily(tuple(() for _ in V.dims))


def full_family(V: Representation) -> SubrepFamily:
    return SubrepFamily(tuple(identity(V.field, d) for d in V.dims))


def all_subspaces(field: PrimeField, n: int) -> list[Matrix]:
    """Every subspace of field^n as canonical RREF row bases, dimension
    ascending, deterministic order."""
    out: list[Matrix] = [()]
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_cells = [
                (i, j)
                for i in range(k)
                for j in range(pivots[i] + 1, n)
                if j not in pivots
            ]
            for values in itertools.product(field.elements, repeat=len(free_cells)):
                rows = [[field.zero] * n for _ in range(k)]
                for i in range(k):
                    rows[i][pivots[i]] = field.one
                for (i, j), val in zip(free_cells, values):
                    rows[i][j] = val
                out.append(tuple(tuple(r) for r in rows))
    return out


def _require_prime_field(V: Representation) -> PrimeField:
    if not isinstance(V.field, PrimeField):
        raise DomainError(
            "subobject enumeration needs a finite field; reduce the "
            "representation modulo a prime first (reps.reduce_mod)"
        )
    return V.field


def _is_invariant(V: Representation, bases: Sequence[Matrix]) -> bool:
    for arrow in V.algebra.quiver.arrows:
        mat = V.map_for(arrow.name)
        target_basis = bases[arrow.target - 1]
        for u in bases[arrow.source - 1]:
            w = mat_vec(V.field, mat, u)
            if not in_row_space(V.field, target_basis, w):
                return False
    return True


def subrep_families(
    V: Representation,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> list[SubrepFamily]:
    """All arrow-invariant subspace tuples of V, canonically sorted."""
    field = _require_prime_field(V)
    per_vertex = [all_subspaces(field, d) for d in V.dims]
    total = 1
    for subs in per_vertex:
        total *= len(subs)
    if total > guard:
        raise GuardError(
            f"{total} subspace tuples exceed guard {guard}; "
            "try a smaller prime or smaller dimensions"
        )
    if rng is not None:
        for subs in per_vertex:
            rng.shuffle(subs)
    found = [
        SubrepFamily(combo)
        for combo in itertools.product(*per_vertex)
        if _is_invariant(V, combo)
    ]
    found.sort(key=SubrepFamily.encoding)
    return found


def enumerate_subrep_classes(
    V: Representation,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> dict[K0Class, SubrepFamily]:
    """Dimension vectors of all subrepresentations (0 and full included), each
    with its canonical witness, sorted by class."""
    witnesses: dict[K0Class, SubrepFamily] = {}
    for fam in subrep_families(V, guard, rng):
        cls = fam.k0_class()
        prev = witnesses.get(cls)
        if prev is None or fam.encoding() < prev.encoding():
            witnesses[cls] = fam
    return {cls: witnesses[cls] for cls in sorted(witnesses)}


def _verdict_from_classes(
    gamma: K0Class, classes: Iterable[K0Class], s: SlopeData
) -> Verdict:
    verdict = Verdict.STABLE
    for beta in classes:
        if beta.is_zero() or beta == gamma:
            continue
        order = compare_slopes(beta, gamma, s)
        if order is Ordering.GREATER:
            return Verdict.UNSTABLE
        if order is Ordering.EQUAL:
            verdict = Verdict.STRICTLY_SEMISTABLE
    return verdict


def classify_stability(
    V: Representation,
    s: SlopeData,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> Verdict:
    """Stable / strictly semistable / unstable by exhaustive subobject check."""
    gamma = dimension_vector(V)
    if gamma.is_zero():
        raise DomainError("stability is undefined for the zero representation")
    classes = enumerate_subrep_classes(V, guard, rng)
    return _verdict_from_classes(gamma, classes, s)


def max_destabilizer(
    V: Representation,
    s: SlopeData,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> SubrepFamily:
    """Witness of the strongly maximal destabilizing class: maximal slope,
    then maximal total dimension; V itself iff V is semistable."""
    gamma = dimension_vector(V)
    if gamma.is_zero():
        raise DomainError("the zero representation has no destabilizer")
    classes = enumerate_subrep_classes(V, guard, rng)
    if _verdict_from_classes(gamma, classes, s).is_semistable:
        return classes[gamma]
    proper = [c for c in classes if not c.is_zero() and c != gamma]
    best: list[K0Class] = []
    for beta in proper:
        if not best:
            best = [beta]
            continue
        order = compare_slopes(beta, best[0], s)
        if order is Ordering.GREATER:
            best = [beta]
        elif order is Ordering.EQUAL:
            best.append(beta)
    top_total = max(b.total() for b in best)
    top = [b for b in best if b.total() == top_total]
    assert len(top) == 1, "maximal destabilizing class is not unique"
    return classes[top[0]]


def restrict_to_subrep(V: Representation, family: SubrepFamily) -> Representation:
    """V restricted to an invariant family, in the family's basis coordinates."""
    field = V.field
    dims = family.dims()
    mats = []
    for arrow in V.algebra.quiver.arrows:
        src_basis = family.vertex_bases[arrow.source - 1]
        tgt_basis = family.vertex_bases[arrow.target - 1]
        mat = V.map_for(arrow.name)
        columns = []
        for u in src_basis:
            w = mat_vec(field, mat, u)
            coords = coords_in_basis(field, tgt_basis, w, V.dim(arrow.target))
            if coords is None:
                raise DomainError("family is not invariant under the arrow maps")
            columns.append(coords)
        rows = tuple(
            tuple(col[r] for col in columns) for r in range(len(tgt_basis))
        )
        mats.append(rows)
    return Representation(V.algebra, field, dims, tuple(mats))


def quotient_by_subrep(
    V: Representation, family: SubrepFamily
) -> tuple[Representation, tuple[tuple[int, ...], ...]]:
    """Quotient of V by an invariant family.

    Returns the quotient in complement coordinates together with, per vertex,
    the ambient positions of the complement unit vectors (the section used to
    lift quotient data back into V).
    """
    field = V.field
    sections: list[tuple[int, ...]] = []
    pivot_sets: list[set[int]] = []
    for v in range(1, V.algebra.quiver.vertex_count + 1):
        basis = family.vertex_bases[v - 1]
        pivots = set()
        for row in basis:
            piv = next(j for j, x in enumerate(row) if not field.is_zero(x))
            pivots.add(piv)
        pivot_sets.append(pivots)
        sections.append(tuple(j for j in range(V.dim(v)) if j not in pivots))
    dims = tuple(len(sec) for sec in sections)

    def residual(vertex: int, w: Sequence) -> list:
        work = list(w)
        for row in family.vertex_bases[vertex - 1]:
            piv = next(j for j, x in enumerate(row) if not field.is_zero(x))
            if field.is_zero(work[piv]):
                continue
            f = work[piv]
            work = [field.sub(x, field.mul(f, y)) for x, y in zip(work, row)]
        return work

    mats = []
    for arrow in V.algebra.quiver.arrows:
        mat = V.map_for(arrow.name)
        src_sec = sections[arrow.source - 1]
        tgt_sec = sections[arrow.target - 1]
        columns = []
        for pos in src_sec:
            unit = [field.zero] * V.dim(arrow.source)
            unit[pos] = field.one
            w = residual(arrow.target, mat_vec(field, mat, unit))
            columns.append([w[j] for j in tgt_sec])
        rows = tuple(
            tuple(col[r] for col in columns) for r in range(len(tgt_sec))
        )
        mats.append(rows)
    quotient = Representation(V.algebra, field, dims, tuple(mats))
    return quotient, tuple(sections)


def preimage_family(
    V: Representation,
    family: SubrepFamily,
    sections: tuple[tuple[int, ...], ...],
    quotient_family: SubrepFamily,
) -> SubrepFamily:
    """Lift a subfamily of the quotient back to V (containing `family`)."""
    field = V.field
    bases = []
    for v in range(1, V.algebra.quiver.vertex_count + 1):
        rows = list(family.vertex_bases[v - 1])
        for qrow in quotient_family.vertex_bases[v - 1]:
            lift = [field.zero] * V.dim(v)
            for coeff, pos in zip(qrow, sections[v - 1]):
                lift[pos] = coeff
            rows.append(tuple(lift))
        bases.append(row_space(field, rows))
    return SubrepFamily(tuple(bases))


@dataclass(frozen=True)
class HNFiltration:
    """A chain from 0 to the full representation with semistable factors of
    strictly decreasing slope."""

    chain: tuple[SubrepFamily, ...]
    factor_classes: tuple[K0Class, ...]
    factor_slopes: tuple[SlopeValue, ...]


def hn_filtration(
    V: Representation,
    s: SlopeData,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> HNFiltration:
    """Greedy Harder-Narasimhan filtration: peel off the maximal destabilizer,
    recurse on the quotient, and lift the chain back."""
    gamma = dimension_vector(V)
    if gamma.is_zero():
        raise DomainError("the zero representation has no filtration")
    classes = enumerate_subrep_classes(V, guard, rng)
    verdict = _verdict_from_classes(gamma, classes, s)
    if verdict.is_semistable:
        return HNFiltration(
            (zero_family(V), full_family(V)),
            (gamma,),
            (slope_value(gamma, s),),
        )
    first = max_destabilizer(V, s, guard, rng)
    first_class = first.k0_class()
    sub_verdict = classify_stability(restrict_to_subrep(V, first), s, guard, rng)
    assert sub_verdict.is_semistable, "maximal destabilizer must be semistable"
    quotient, sections = quotient_by_subrep(V, first)
    rest = hn_filtration(quotient, s, guard, rng)
    chain = [zero_family(V), first]
    for step in rest.chain[1:]:
        chain.append(preimage_family(V, first, sections, step))
    factor_classes = (first_class,) + rest.factor_classes
    factor_slopes = (slope_value(first_class, s),) + rest.factor_slopes
    for a, b in zip(factor_slopes, factor_slopes[1:]):
        assert a.compare(b) is Ordering.GREATER, "HN slopes must strictly decrease"
    total = factor_classes[0]
    for c in factor_classes[1:]:
        total = total + c
    assert total == gamma, "HN factor classes must sum to the dimension vector"
    return HNFiltration(tuple(chain), factor_classes, factor_slopes)


@dataclass(frozen=True)
class StableFactorData:
    """Sorted multiset of stable factor classes of a semistable representation
    (all of one slope); the S-equivalence invariant."""

    factors: tuple[K0Class, ...]
    slope: SlopeValue


def stable_factor_filtration(
    V: Representation,
    s: SlopeData,
    guard: int = SUBSPACE_GUARD,
    rng: random.Random | None = None,
) -> StableFactorData:
    """Refine a semistable representation by repeatedly splitting off a
    minimal-dimension equal-slope subrepresentation (which is stable)."""
    gamma = dimension_vector(V)
    if gamma.is_zero():
        raise DomainError("the zero representation has no stable factors")
    if not classify_stability(V, s, guard, rng).is_semistable:
        raise DomainError("stable-factor refinement requires a semistable input")
    total_slope = slope_value(gamma, s)
    factors: list[K0Class] = []
    current = V
    while not dimension_vector(current).is_zero():
        classes = enumerate_subrep_classes(current, guard, rng)
        candidates = [
            c
            for c in classes
            if not c.is_zero()
            and slope_value(c, s).compare(total_slope) is Ordering.EQUAL
        ]
        beta = min(candidates, key=lambda c: (c.total(), c))
        factors.append(beta)
        current, _ = quotient_by_subrep(current, classes[beta])
    summed = factors[0]
    for c in factors[1:]:
        summed = summed + c
    assert summed == gamma, "stable factors must sum to the dimension vector"
    return StableFactorData(tuple(sorted(factors)), total_slope)


def s_equivalent(
    V: Representation,
    W: Representation,
    s: SlopeData,
    guard: int = SUBSPACE_GUARD,
) -> bool:
    """Whether two semistable representations of one class share their stable
    factor multisets."""
    if dimension_vector(V) != dimension_vector(W):
        raise DomainError("S-equivalence compares representations of one class")
    return (
        stable_factor_filtration(V, s, guard).factors
        == stable_factor_filtration(W, s, guard).factors
    )
