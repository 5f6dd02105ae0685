"""Desk-scale moduli sets: semistable representations of a fixed class over a
finite field, up to S-equivalence.

A moduli set here is a finite inventory of S-equivalence classes with
canonical representatives; no variety structure is constructed.  Every output
list is canonically sorted, so results are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, GuardError
from .fields import FieldSpec, PrimeField
from .ktheory import K0Class, Ordering, SlopeData, compare_slopes
from .linalg import is_invertible, mat_mul
from .quiver import Algebra
from .reps import (
    HOM_SPAN_GUARD,
    Representation,
    dimension_vector,
    direct_sum_all,
    hom_space,
    is_isomorphic,
    validate_representation,
)
from .stability import (
    SUBSPACE_GUARD,
    classify_stability,
    stable_factor_filtration,
)

REP_GUARD = 10**7


@dataclass(frozen=True)
class SClass:
    """One S-equivalence class: canonical representative, stable-factor
    multiset, and how many isomorphism classes it absorbs."""

    representative: Representation
    factors: tuple[K0Class, ...]
    absorbed: int


@dataclass(frozen=True)
class ModuliSet:
    algebra: Algebra
    gamma: K0Class
    field: FieldSpec
    slope: SlopeData
    classes: tuple[SClass, ...]


def enumerate_reps_up_to_iso(
    algebra: Algebra,
    gamma: K0Class,
    field: PrimeField,
    guard: int = REP_GUARD,
    iso_guard: int = HOM_SPAN_GUARD,
) -> list[Representation]:
    """All relation-satisfying representations of class gamma, one canonical
    (lexicographically least) representative per isomorphism class."""
    quiver = algebra.quiver
    if len(gamma) != quiver.vertex_count:
        raise DomainError("class length must match the vertex count")
    if gamma.is_zero():
        return []
    if not gamma.is_effective():
        raise DomainError("dimension vectors must be effective")
    dims = gamma.multiplicities
    shapes = [
        (dims[a.target - 1], dims[a.source - 1]) for a in quiver.arrows
    ]
    entries = sum(m * n for m, n in shapes)
    if field.p**entries > guard:
        raise GuardError(
            f"{field.p}^{entries} matrix tuples exceed guard {guard}"
        )
    representatives: list[Representation] = []
    for flat in itertools.product(field.elements, repeat=entries):
        mats = []
        pos = 0
        for m, n in shapes:
            mats.append(
                tuple(tuple(flat[pos + r * n : pos + (r + 1) * n]) for r in range(m))
            )
            pos += m * n
        rep = Representation(algebra, field, dims, tuple(mats))
        if not validate_representation(algebra, rep):
            continue
        if not any(is_isomorphic(rep, seen, iso_guard) for seen in representatives):
            representatives.append(rep)
    return representatives


def moduli_set(
    algebra: Algebra,
    gamma: K0Class,
    field: PrimeField,
    s: SlopeData,
    guard: int = REP_GUARD,
    subspace_guard: int = SUBSPACE_GUARD,
) -> ModuliSet:
    """Semistable representations of class gamma modulo S-equivalence."""
    reps = enumerate_reps_up_to_iso(algebra, gamma, field, guard)
    groups: dict[tuple[K0Class, ...], list[Representation]] = {}
    for rep in reps:
        if not classify_stability(rep, s, subspace_guard).is_semistable:
            continue
        factors = stable_factor_filtration(rep, s, subspace_guard).factors
        groups.setdefault(factors, []).append(rep)
    classes = tuple(
        SClass(representative=members[0], factors=factors, absorbed=len(members))
        for factors, members in sorted(groups.items())
    )
    return ModuliSet(algebra, gamma, field, s, classes)


def _is_end_local(V: Representation, guard: int = HOM_SPAN_GUARD) -> bool:
    """Necessary check for indecomposability: sampled endomorphisms are each
    invertible or nilpotent.  Over a prime field the whole endomorphism span
    is sampled; over the rationals only the basis elements are."""
    basis = hom_space(V, V)
    if V.total_dim() == 0:
        return False
    field = V.field
    dims = V.dims
    if isinstance(field, PrimeField):
        if field.p ** len(basis) > guard:
            raise GuardError("endomorphism span exceeds the scan guard")
        combos = itertools.product(field.elements, repeat=len(basis))
        samples = []
        for coeffs in combos:
            if all(field.is_zero(c) for c in coeffs):
                continue
            mats = []
            for v in range(len(dims)):
                acc = tuple(
                    tuple(
                        _linear_comb(field, coeffs, basis, v, r, c)
                        for c in range(dims[v])
                    )
                    for r in range(dims[v])
                )
                mats.append(acc)
            samples.append(mats)
    else:
        samples = [list(mor.vertex_maps) for mor in basis]
    for mats in samples:
        invertible = all(is_invertible(field, mats[v], dims[v]) for v in range(len(dims)))
        if invertible:
            continue
        if not _is_nilpotent(field, mats, dims):
            return False
    return True


def _linear_comb(field, coeffs, basis, v, r, c):
    acc = field.zero
    for coeff, mor in zip(coeffs, basis):
        acc = field.add(acc, field.mul(coeff, mor.vertex_maps[v][r][c]))
    return acc


def _is_nilpotent(field, mats, dims) -> bool:
    for v in range(len(dims)):
        n = dims[v]
        if n == 0:
            continue
        power = mats[v]
        for _ in range(n - 1):
            power = mat_mul(field, power, mats[v], cols=n)
        if any(not field.is_zero(x) for row in power for x in row):
            return False
    return True


def krull_schmidt_moduli(
    indecomposables: Sequence[Representation],
    gamma: K0Class,
    s: SlopeData,
    subspace_guard: int = SUBSPACE_GUARD,
) -> ModuliSet:
    """Moduli set assembled from a supplied list of indecomposables: multisets
    of summands of total class gamma, all semistable of one slope.

    The list is caller-asserted to be pairwise non-isomorphic and
    indecomposable; beyond validity, only an End-local spot check is run.
    An unreachable gamma yields an empty moduli set, not an error.
    """
    if not indecomposables:
        raise DomainError("need at least one indecomposable")
    algebra = indecomposables[0].algebra
    field = indecomposables[0].field
    if not isinstance(field, PrimeField):
        raise DomainError("Krull-Schmidt moduli need representations over a prime field")
    for rep in indecomposables:
        if rep.algebra != algebra or rep.field != field:
            raise DomainError("all summands must share one algebra and field")
        if not validate_representation(algebra, rep):
            raise DomainError("a summand fails the algebra relations")
        if not _is_end_local(rep):
            raise DomainError("a summand fails the End-local (indecomposability) check")

    classes = [dimension_vector(rep) for rep in indecomposables]
    semistable = [
        classify_stability(rep, s, subspace_guard).is_semistable
        for rep in indecomposables
    ]

    multisets: list[tuple[int, ...]] = []

    def extend(idx: int, remaining: K0Class, counts: list[int]) -> None:
        if remaining.is_zero():
            if any(counts):
                multisets.append(tuple(counts))
            return
        if idx == len(indecomposables):
            return
        cls = classes[idx]
        limit = min(
            (remaining.multiplicities[i] // cls.multiplicities[i]
             for i in range(len(cls)) if cls.multiplicities[i] > 0),
            default=0,
        )
        for count in range(limit, -1, -1):
            counts.append(count)
            extend(idx + 1, remaining - cls.scaled(count), counts)
            counts.pop()

    extend(0, gamma, [])

    groups: dict[tuple[K0Class, ...], list[Representation]] = {}
    for counts in sorted(multisets):
        chosen = [
            (classes[i], indecomposables[i], n) for i, n in enumerate(counts) if n > 0
        ]
        if not all(semistable[i] for i, n in enumerate(counts) if n > 0):
            continue
        base = chosen[0][0]
        if any(
            compare_slopes(cls, base, s) is not Ordering.EQUAL for cls, _, _ in chosen[1:]
        ):
            continue
        summands: list[Representation] = []
        for _, rep, n in sorted(chosen, key=lambda t: (t[0], t[1].encoding())):
            summands.extend([rep] * n)
        total = direct_sum_all(summands)
        factors = stable_factor_filtration(total, s, subspace_guard).factors
        groups.setdefault(factors, []).append(total)
    out = tuple(
        SClass(representative=members[0], factors=factors, absorbed=len(members))
        for factors, members in sorted(groups.items())
    )
    return ModuliSet(algebra, gamma, field, s, out)
