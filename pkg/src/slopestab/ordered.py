"""Exact totally ordered rational vector spaces with the lexicographic order.

Vectors carry `fractions.Fraction` coordinates only; no floats enter or leave.
The order is lexicographic on coordinates and the norm is the supremum norm,
so every comparison and every margin computation is exact.  Only the
lexicographic order is provided; a different total order would slot in here
as an alternative comparison on `OrderedSpace`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError

Rational = Union[Fraction, int, str]


def rat(value: Rational) -> Fraction:
    """Coerce an int, string ("p/q" or "p"), or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"not an exact rational: {value!r} (floats are rejected)")


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @staticmethod
    def of(sign: int) -> "Ordering":
        if sign < 0:
            return Ordering.LESS
        if sign > 0:
            return Ordering.GREATER
        return Ordering.EQUAL


@dataclass(frozen=True)
class OrderedVector:
    """A point of Q^k, compared lexicographically."""

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) < 1:
            raise DomainError("ordered vectors need dimension >= 1")
        object.__setattr__(self, "coords", tuple(rat(c) for c in self.coords))

    @staticmethod
    def of(values: Iterable[Rational]) -> "OrderedVector":
        return OrderedVector(tuple(rat(v) for v in values))

    @staticmethod
    def zero(dimension: int) -> "OrderedVector":
        return OrderedVector((Fraction(0),) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "OrderedVector") -> "OrderedVector":
        self._check_dim(other)
        return OrderedVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "OrderedVector") -> "OrderedVector":
        self._check_dim(other)
        return OrderedVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "OrderedVector":
        return OrderedVector(tuple(-a for a in self.coords))

    def scale(self, a: Rational) -> "OrderedVector":
        q = rat(a)
        return OrderedVector(tuple(q * c for c in self.coords))

    def sup_norm(self) -> Fraction:
        return max(abs(c) for c in self.coords)

    def _check_dim(self, other: "OrderedVector") -> None:
        if self.dimension != other.dimension:
            raise DomainError(
                f"dimension mismatch: {self.dimension} vs {other.dimension}"
            )

    # Rich comparisons are lexicographic; the order is total, so these are safe.
    def __lt__(self, other: "OrderedVector") -> bool:
        return lex_compare(self, other) is Ordering.LESS

    def __le__(self, other: "OrderedVector") -> bool:
        return lex_compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: "OrderedVector") -> bool:
        return lex_compare(self, other) is Ordering.GREATER

    def __ge__(self, other: "OrderedVector") -> bool:
        return lex_compare(self, other) is not Ordering.LESS


def lex_compare(u: OrderedVector, v: OrderedVector) -> Ordering:
    """Compare two vectors at the first differing coordinate."""
    u._check_dim(v)
    for a, b in zip(u.coords, v.coords):
        if a != b:
            return Ordering.LESS if a < b else Ordering.GREATER
    return Ordering.EQUAL


def lex_sign(v: OrderedVector) -> int:
    """Sign of v against the zero vector: -1, 0, or +1."""
    for c in v.coords:
        if c != 0:
            return -1 if c < 0 else 1
    return 0


@dataclass(frozen=True)
class OrderedSpace:
    """Q^k with the lexicographic order and the supremum norm."""

    dimension: int

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DomainError("ordered space dimension must be >= 1")

    def zero(self) -> OrderedVector:
        return OrderedVector.zero(self.dimension)

    def vector(self, values: Iterable[Rational]) -> OrderedVector:
        v = OrderedVector.of(values)
        self.check_member(v)
        return v

    def check_member(self, v: OrderedVector) -> None:
        if v.dimension != self.dimension:
            raise DomainError(
                f"vector of dimension {v.dimension} not in space of dimension {self.dimension}"
            )

    def compare(self, u: OrderedVector, v: OrderedVector) -> Ordering:
        self.check_member(u)
        self.check_member(v)
        return lex_compare(u, v)

    def norm(self, v: OrderedVector) -> Fraction:
        self.check_member(v)
        return v.sup_norm()


def axiom_check_scaling(
    space: OrderedSpace,
    samples: Sequence[tuple[Rational, OrderedVector]],
) -> bool:
    """Check positive-scaling compatibility on a finite sample set.

    For each sample (a, r) with a > 0 and r > 0 the order must satisfy
    a*r > 0 and -r < 0.  Samples that fail the hypothesis (a <= 0 or r <= 0)
    hold vacuously.  The empty list returns True.
    """
    zero = space.zero()
    for a, r in samples:
        space.check_member(r)
        q = rat(a)
        if q <= 0 or lex_sign(r) <= 0:
            continue
        if lex_sign(r.scale(q)) <= 0:
            return False
        if lex_compare(-r, zero) is not Ordering.LESS:
            return False
    return True


def separation_margin(
    space: OrderedSpace,
    pairs: Sequence[tuple[OrderedVector, OrderedVector]],
) -> Fraction | None:
    """Largest guaranteed sup-norm margin below which perturbing the smaller
    vector of each pair keeps it below the larger one.

    For a pair (r', r) with r' < r a margin exists iff the vectors already
    differ at coordinate 0; then (r_0 - r'_0)/2 works, and the result is the
    minimum over pairs.  Pairs differing only at a later coordinate admit no
    margin under the lexicographic order (bumping coordinate 0 overtakes r),
    so None is returned.  An empty pair list is vacuous and yields 1.
    """
    best: Fraction | None = None
    for r_prime, r in pairs:
        space.check_member(r_prime)
        space.check_member(r)
        if lex_compare(r_prime, r) is not Ordering.LESS:
            raise DomainError("separation_margin requires r' < r for every pair")
        if r_prime.coords[0] == r.coords[0]:
            return None
        margin = (r.coords[0] - r_prime.coords[0]) / 2
        if best is None or margin < best:
            best = margin
    return Fraction(1) if best is None else best
