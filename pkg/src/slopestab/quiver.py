"""Quivers with relations and finite-dimensional path-algebra quotients.

Composition convention: a path stores its arrows in application order, so the
path (p, q) applies p first, then q.  Displayed names concatenate
right-to-left (function style), so that path prints as "q*p".  A relation
like "apply b, then a, get zero" is the single-term relation on the path
(b, a).

Relations must be homogeneous in path length (every term of one relation has
the same length): the quotient basis is computed degree by degree against the
graded ideal, which is what makes the stopping rule exact.  All admissibility
requirements (length >= 2, common endpoints) are enforced.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import DomainError, GuardError
from .fields import QQ
from .linalg import rref
from .ordered import Rational, rat

MAX_PATHS_PER_DEGREE = 20000


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if self.vertex_count < 1:
            raise DomainError("quiver needs at least one vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise DomainError("arrow names must be distinct")
        for a in self.arrows:
            if not (1 <= a.source <= self.vertex_count) or not (
                1 <= a.target <= self.vertex_count
            ):
                raise DomainError(f"arrow {a.name} endpoints out of range")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrow_map[name]
        except KeyError as exc:
            raise DomainError(f"unknown arrow {name!r}") from exc

    def arrows_from(self, vertex: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_into(self, vertex: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == vertex]


@dataclass(frozen=True, order=True)
class Path:
    """A composable arrow word; arrows listed in application order.

    `source` is the start vertex; the empty word is the trivial path there.
    """

    source: int
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def display(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        return "*".join(reversed(self.arrows))


def trivial_path(vertex: int) -> Path:
    return Path(vertex, ())


def path_target(quiver: Quiver, path: Path) -> int:
    """Validate composability and return the end vertex."""
    v = path.source
    for name in path.arrows:
        arrow = quiver.arrow(name)
        if arrow.source != v:
            raise DomainError(f"path {path.display()} breaks at arrow {name!r}")
        v = arrow.target
    return v


@dataclass(frozen=True)
class Relation:
    """A rational combination of parallel paths that vanishes in the quotient."""

    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self) -> None:
        terms = tuple((rat(c), p) for c, p in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise DomainError("a relation needs at least one term")
        if any(c == 0 for c, _ in terms):
            raise DomainError("relation coefficients must be nonzero")

    @property
    def degree(self) -> int:
        return self.terms[0][1].length


@dataclass(frozen=True)
class RelationSet:
    relations: tuple[Relation, ...]

    def validate(self, quiver: Quiver) -> None:
        for rel in self.relations:
            endpoints = set()
            lengths = set()
            for _, path in rel.terms:
                target = path_target(quiver, path)
                endpoints.add((path.source, target))
                lengths.add(path.length)
                if path.length < 2:
                    raise DomainError(
                        f"relation path {path.display()} has length {path.length}; "
                        "admissibility requires length >= 2"
                    )
            if len(endpoints) != 1:
                raise DomainError("all paths of a relation must share source and target")
            if len(lengths) != 1:
                raise DomainError(
                    "relations must be homogeneous in path length; "
                    "split inhomogeneous relations before constructing the algebra"
                )


class Algebra:
    """A finite-dimensional path-algebra quotient with a fixed path basis.

    Instances are immutable; build them with `algebra_basis`.  Equality and
    hashing are by presentation (quiver and relations).
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: RelationSet,
        basis: tuple[Path, ...],
        reductions: dict[Path, tuple[tuple[Fraction, Path], ...]],
        cutoff_degree: int,
    ) -> None:
        self.quiver = quiver
        self.relations = relations
        self.basis = basis
        self._reductions = reductions
        self._basis_set = frozenset(basis)
        self.cutoff_degree = cutoff_degree

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Algebra):
            return NotImplemented
        return self.quiver == other.quiver and self.relations == other.relations

    def __hash__(self) -> int:
        return hash((self.quiver, self.relations))

    def __repr__(self) -> str:
        return f"Algebra(dim={self.dimension}, arrows={len(self.quiver.arrows)})"

    def reduce_path(self, path: Path) -> tuple[tuple[Fraction, Path], ...]:
        """Expand a composable path in the quotient basis (empty if it dies)."""
        if path in self._basis_set:
            return ((Fraction(1), path),)
        if path.length >= self.cutoff_degree:
            return ()
        try:
            return self._reductions[path]
        except KeyError as exc:
            path_target(self.quiver, path)  # raise a clearer error if malformed
            raise AssertionError(f"no reduction recorded for {path.display()}") from exc

    def left_multiply(self, arrow_name: str, path: Path) -> tuple[tuple[Fraction, Path], ...]:
        """Apply an arrow after a basis path and expand in the basis."""
        arrow = self.quiver.arrow(arrow_name)
        if path_target(self.quiver, path) != arrow.source:
            raise DomainError(
                f"arrow {arrow_name!r} does not compose after {path.display()}"
            )
        return self.reduce_path(Path(path.source, path.arrows + (arrow_name,)))

    def basis_with_source(self, vertex: int) -> list[Path]:
        return [p for p in self.basis if p.source == vertex]

    def path_endpoints(self, path: Path) -> tuple[int, int]:
        return path.source, path_target(self.quiver, path)


def algebra_basis(quiver: Quiver, relations: RelationSet, n_max: int = 64) -> Algebra:
    """Compute a path basis of the quotient algebra degree by degree.

    At each degree the span of all shifted relations is removed; non-pivot
    paths survive as basis elements and pivot paths get a reduction into
    them.  A degree contributing nothing kills all higher degrees (the ideal
    is graded), which is the finite-dimension detection; exceeding `n_max`
    degrees raises a guard error.
    """
    relations.validate(quiver)
    basis: list[Path] = [trivial_path(v) for v in range(1, quiver.vertex_count + 1)]
    reductions: dict[Path, tuple[tuple[Fraction, Path], ...]] = {}

    paths_by_degree: dict[int, list[Path]] = {
        0: [trivial_path(v) for v in range(1, quiver.vertex_count + 1)],
    }
    targets: dict[Path, int] = {p: p.source for p in paths_by_degree[0]}

    degree = 0
    while True:
        degree += 1
        if degree > n_max:
            raise GuardError(
                f"quotient not finite-dimensional within {n_max} path degrees"
            )
        current: list[Path] = []
        for prev in paths_by_degree[degree - 1]:
            for arrow in quiver.arrows_from(targets[prev]):
                p = Path(prev.source, prev.arrows + (arrow.name,))
                targets[p] = arrow.target
                current.append(p)
        if len(current) > MAX_PATHS_PER_DEGREE:
            raise GuardError(
                f"path explosion at degree {degree}: {len(current)} paths"
            )
        current.sort()
        paths_by_degree[degree] = current
        if not current:
            cutoff = degree
            break

        if degree >= 2:
            index = {p: i for i, p in enumerate(current)}
            rows: list[list[Fraction]] = []
            for rel in relations.relations:
                g = rel.degree
                if g > degree:
                    continue
                rel_source = rel.terms[0][1].source
                rel_target = path_target(quiver, rel.terms[0][1])
                for pre_len in range(degree - g + 1):
                    post_len = degree - g - pre_len
                    for pre in paths_by_degree[pre_len]:
                        if targets[pre] != rel_source:
                            continue
                        for post in paths_by_degree[post_len]:
                            if post.source != rel_target:
                                continue
                            row = [Fraction(0)] * len(current)
                            for coeff, term in rel.terms:
                                whole = Path(
                                    pre.source, pre.arrows + term.arrows + post.arrows
                                )
                                row[index[whole]] += coeff
                            rows.append(row)
            reduced, pivots = rref(QQ, rows)
            pivot_set = set(pivots)
            new_basis = [p for i, p in enumerate(current) if i not in pivot_set]
            for row_idx, piv in enumerate(pivots):
                expansion = tuple(
                    (-reduced[row_idx][j], current[j])
                    for j in range(len(current))
                    if j != piv and reduced[row_idx][j] != 0
                )
                reductions[current[piv]] = expansion
            if not new_basis:
                cutoff = degree
                break
            basis.extend(new_basis)
        else:
            basis.extend(current)

    return Algebra(quiver, relations, tuple(basis), reductions, cutoff)


def relabel_algebra(algebra: Algebra, perm: Sequence[int]) -> Algebra:
    """Rebuild the algebra with vertices renamed by `perm` (old -> new, 1-based)."""
    n = algebra.quiver.vertex_count
    if sorted(perm) != list(range(1, n + 1)):
        raise DomainError("perm must be a permutation of 1..vertex_count")
    new_quiver = Quiver(
        n,
        tuple(
            Arrow(a.name, perm[a.source - 1], perm[a.target - 1])
            for a in algebra.quiver.arrows
        ),
    )
    new_relations = RelationSet(
        tuple(
            Relation(
                tuple(
                    (c, Path(perm[p.source - 1], p.arrows)) for c, p in rel.terms
                )
            )
            for rel in algebra.relations.relations
        )
    )
    return algebra_basis(new_quiver, new_relations)
