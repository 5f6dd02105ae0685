"""Grothendieck classes, slope structures, and character integerization.

Classes are integer multiplicity vectors over a labeled simple set.  Slopes
are projective pairs (vector numerator, positive rational denominator) and
are only ever compared through the 2x2 determinant rule, never by division,
so everything stays polynomial in the inputs.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DomainError
from .lp import lp_maximize
from .ordered import (
    Ordering,
    OrderedSpace,
    OrderedVector,
    Rational,
    lex_sign,
    rat,
)


@dataclass(frozen=True)
class SimpleLabelSet:
    """Ordered labels for the simple objects, optionally with weight vectors."""

    labels: tuple[str, ...]
    weights: tuple[OrderedVector, ...] | None = None

    def __post_init__(self) -> None:
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("simple labels must be distinct")
        if self.weights is not None:
            if len(self.weights) != len(self.labels):
                raise DomainError("one weight vector per label required")
            dims = {w.dimension for w in self.weights}
            if len(dims) > 1:
                raise DomainError("weight vectors must share one ambient dimension")

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise DomainError(f"unknown label {label!r}") from exc


@dataclass(frozen=True, order=True)
class K0Class:
    """An integer multiplicity vector over a fixed simple label set."""

    multiplicities: tuple[int, ...]

    def __post_init__(self) -> None:
        if not all(isinstance(m, int) for m in self.multiplicities):
            raise DomainError("multiplicities must be integers")

    @staticmethod
    def of(values: Iterable[int]) -> "K0Class":
        return K0Class(tuple(int(v) for v in values))

    @staticmethod
    def unit(n: int, i: int) -> "K0Class":
        return K0Class(tuple(1 if j == i else 0 for j in range(n)))

    @staticmethod
    def zero(n: int) -> "K0Class":
        return K0Class((0,) * n)

    def __len__(self) -> int:
        return len(self.multiplicities)

    def __add__(self, other: "K0Class") -> "K0Class":
        self._check_len(other)
        return K0Class(tuple(a + b for a, b in zip(self.multiplicities, other.multiplicities)))

    def __sub__(self, other: "K0Class") -> "K0Class":
        self._check_len(other)
        return K0Class(tuple(a - b for a, b in zip(self.multiplicities, other.multiplicities)))

    def scaled(self, n: int) -> "K0Class":
        return K0Class(tuple(n * a for a in self.multiplicities))

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.multiplicities)

    def is_effective(self) -> bool:
        """Nonzero with all multiplicities >= 0 (the class of an object)."""
        return all(m >= 0 for m in self.multiplicities) and not self.is_zero()

    def dominates(self, other: "K0Class") -> bool:
        """Componentwise other <= self."""
        self._check_len(other)
        return all(b <= a for a, b in zip(self.multiplicities, other.multiplicities))

    def total(self) -> int:
        return sum(self.multiplicities)

    def _check_len(self, other: "K0Class") -> None:
        if len(self) != len(other):
            raise DomainError("class length mismatch")


class Verdict(enum.Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"

    @property
    def is_semistable(self) -> bool:
        return self is not Verdict.UNSTABLE


@dataclass(frozen=True)
class SlopeData:
    """The pair of additive functions defining a slope: one vector value and
    one positive rational per simple label."""

    labels: SimpleLabelSet
    space: OrderedSpace
    c_values: tuple[OrderedVector, ...]
    d_values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.c_values) != n or len(self.d_values) != n:
            raise DomainError("need one c value and one d value per label")
        for v in self.c_values:
            self.space.check_member(v)
        object.__setattr__(self, "d_values", tuple(rat(d) for d in self.d_values))
        if any(d <= 0 for d in self.d_values):
            raise DomainError("all d values must be positive")

    def __len__(self) -> int:
        return len(self.labels)

    def c_of(self, cls: K0Class) -> OrderedVector:
        self._check(cls)
        acc = self.space.zero()
        for m, v in zip(cls.multiplicities, self.c_values):
            if m != 0:
                acc = acc + v.scale(m)
        return acc

    def d_of(self, cls: K0Class) -> Fraction:
        self._check(cls)
        return sum(
            (Fraction(m) * d for m, d in zip(cls.multiplicities, self.d_values)),
            Fraction(0),
        )

    def _check(self, cls: K0Class) -> None:
        if len(cls) != len(self.labels):
            raise DomainError("class length does not match slope data")


@dataclass(frozen=True)
class SlopeValue:
    """A slope as a projective pair; order and equality by cross products."""

    numerator: OrderedVector
    denominator: Fraction

    def __post_init__(self) -> None:
        d = rat(self.denominator)
        object.__setattr__(self, "denominator", d)
        if d <= 0:
            raise DomainError("slope denominator must be positive")

    def compare(self, other: "SlopeValue") -> Ordering:
        det = self.numerator.scale(other.denominator) - other.numerator.scale(self.denominator)
        return Ordering.of(lex_sign(det))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SlopeValue):
            return NotImplemented
        return self.compare(other) is Ordering.EQUAL

    def __hash__(self) -> int:
        # Canonical form: numerator / denominator scaled to denominator 1.
        return hash(self.numerator.scale(1 / self.denominator))


def slope_value(cls: K0Class, s: SlopeData) -> SlopeValue:
    """Slope of an effective nonzero class as a (numerator, denominator) pair."""
    if not cls.is_effective():
        raise DomainError(f"slope undefined for non-effective class {cls.multiplicities}")
    return SlopeValue(s.c_of(cls), s.d_of(cls))


def compare_slopes(a: K0Class, b: K0Class, s: SlopeData) -> Ordering:
    """Division-free slope comparison: sign of d(b)c(a) - d(a)c(b)."""
    for cls in (a, b):
        if not cls.is_effective():
            raise DomainError(f"slope undefined for non-effective class {cls.multiplicities}")
    det = s.c_of(a).scale(s.d_of(b)) - s.c_of(b).scale(s.d_of(a))
    return Ordering.of(lex_sign(det))


def seesaw_verify(a: K0Class, b: K0Class, c_: K0Class, s: SlopeData) -> bool:
    """Check the seesaw pattern for a class decomposition b = a + c_.

    True iff the three pairwise comparisons are jointly one of: all rising,
    all falling, or all equal.
    """
    if b != a + c_:
        raise DomainError("seesaw requires b = a + c componentwise")
    o_ab = compare_slopes(a, b, s)
    o_bc = compare_slopes(b, c_, s)
    o_ac = compare_slopes(a, c_, s)
    return o_ab is o_bc and o_bc is o_ac


@dataclass(frozen=True)
class RCharacter:
    """Vector-valued character bound to a class: the slope comparison against
    that class, cleared of denominators (scaled by a positive rational, which
    preserves every sign)."""

    labels: SimpleLabelSet
    space: OrderedSpace
    values: tuple[OrderedVector, ...]
    bound_class: K0Class

    def __post_init__(self) -> None:
        if len(self.values) != len(self.labels):
            raise DomainError("one character value per label required")
        if not self.evaluate(self.bound_class).is_zero():
            raise DomainError("character must vanish on its bound class")

    def evaluate(self, cls: K0Class) -> OrderedVector:
        if len(cls) != len(self.labels):
            raise DomainError("class length does not match character")
        acc = self.space.zero()
        for m, v in zip(cls.multiplicities, self.values):
            if m != 0:
                acc = acc + v.scale(m)
        return acc

    def sign(self, cls: K0Class) -> int:
        return lex_sign(self.evaluate(cls))


@dataclass(frozen=True)
class Character:
    """Integer-valued character bound to a class."""

    labels: SimpleLabelSet
    values: tuple[int, ...]
    bound_class: K0Class

    def __post_init__(self) -> None:
        if len(self.values) != len(self.labels):
            raise DomainError("one character value per label required")
        if not all(isinstance(v, int) for v in self.values):
            raise DomainError("character values must be integers")
        if self.evaluate(self.bound_class) != 0:
            raise DomainError("character must vanish on its bound class")

    def evaluate(self, cls: K0Class) -> int:
        if len(cls) != len(self.labels):
            raise DomainError("class length does not match character")
        return sum(m * v for m, v in zip(cls.multiplicities, self.values))


def character_from_slope(s: SlopeData, gamma: K0Class) -> RCharacter:
    """Vector character of gamma: label i maps to -d(gamma) c(i) + c(gamma) d(i).

    Its sign on an effective class beta equals the sign of the slope
    comparison of gamma against beta, so verdicts depend only on it.
    """
    if not gamma.is_effective():
        raise DomainError("character requires an effective nonzero bound class")
    d_gamma = s.d_of(gamma)
    c_gamma = s.c_of(gamma)
    values = tuple(
        c_i.scale(-d_gamma) + c_gamma.scale(d_i)
        for c_i, d_i in zip(s.c_values, s.d_values)
    )
    return RCharacter(s.labels, s.space, values, gamma)


def class_box(gamma: K0Class) -> list[K0Class]:
    """All nonzero classes componentwise between 0 and gamma, gamma included."""
    ranges = [range(m + 1) for m in gamma.multiplicities]
    out = [K0Class(t) for t in itertools.product(*ranges)]
    return [b for b in out if not b.is_zero()]


def integerize_character(s: SlopeData, gamma: K0Class) -> Character:
    """Integer character matching the vector character's signs on the whole
    gamma-box.

    The box {0 <= beta <= gamma, beta != 0} is a finite superset of all
    subobject classes, so sign agreement there forces verdict agreement.
    Solved as an exact LP: maximize the margin t subject to theta(beta) = 0 /
    >= t / <= -t per sign bucket, inside the box |theta_i| <= 1, t <= 1;
    a positive optimum is scaled to integers by clearing denominators.
    Infeasibility is surfaced as an explicit error rather than patched over.
    """
    rchar = character_from_slope(s, gamma)
    n = len(s.labels)
    box = class_box(gamma)

    # Variables: theta_0 .. theta_{n-1}, t.
    nvars = n + 1
    ineqs: list[tuple[list[Fraction], Fraction]] = []
    eqs: list[tuple[list[Fraction], Fraction]] = []
    one = Fraction(1)
    for beta in box:
        coeffs = [Fraction(m) for m in beta.multiplicities] + [Fraction(0)]
        sign = rchar.sign(beta)
        if sign == 0:
            eqs.append((coeffs, Fraction(0)))
        elif sign > 0:
            # theta(beta) >= t  <=>  -theta(beta) + t <= 0
            row = [-c for c in coeffs[:-1]] + [one]
            ineqs.append((row, Fraction(0)))
        else:
            # theta(beta) <= -t  <=>  theta(beta) + t <= 0
            row = coeffs[:-1] + [one]
            ineqs.append((row, Fraction(0)))
    for i in range(n):
        unit = [Fraction(0)] * nvars
        unit[i] = one
        ineqs.append((list(unit), one))
        ineqs.append(([-c for c in unit], one))
    t_row = [Fraction(0)] * nvars
    t_row[n] = one
    ineqs.append((t_row, one))

    objective = [Fraction(0)] * n + [one]
    result = lp_maximize(objective, ineqs, eqs)
    if result is None or result[0] <= 0:
        raise DomainError(
            "character integerization infeasible: no integer character matches "
            "the slope sign pattern on the class box (unexpected; please report)"
        )
    _, point = result
    theta_rat = point[:n]
    denom = lcm(*(q.denominator for q in theta_rat)) if n else 1
    values = tuple(int(q * denom) for q in theta_rat)
    character = Character(s.labels, values, gamma)
    for beta in box:
        want = rchar.sign(beta)
        got = character.evaluate(beta)
        got_sign = (got > 0) - (got < 0)
        assert got_sign == want, "integerized character sign mismatch on the box"
    return character


def pull_back_slope(
    k0_map: Sequence[Sequence[int]],
    s: SlopeData,
    source_labels: SimpleLabelSet | None = None,
) -> SlopeData:
    """Slope data induced along an integer map of Grothendieck groups.

    `k0_map` has one row per target label and one column per source label;
    column j is the image class of the j-th source simple and must be
    effective nonzero so that the pulled-back d stays positive.
    """
    rows = [tuple(int(x) for x in row) for row in k0_map]
    if len(rows) != len(s.labels):
        raise DomainError("k0 map must have one row per target label")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DomainError("k0 map must be rectangular")
    n_src = widths.pop()
    if source_labels is None:
        source_labels = SimpleLabelSet(tuple(f"v{j + 1}" for j in range(n_src)))
    if len(source_labels) != n_src:
        raise DomainError("source label count does not match k0 map width")
    c_values = []
    d_values = []
    for j in range(n_src):
        column = K0Class(tuple(row[j] for row in rows))
        if not column.is_effective():
            raise DomainError(
                f"k0 map column {j} is not an effective nonzero class; pull-back undefined"
            )
        c_values.append(s.c_of(column))
        d_values.append(s.d_of(column))
    return SlopeData(source_labels, s.space, tuple(c_values), tuple(d_values))


def _verdict_from_signs(signs: Iterable[int]) -> Verdict:
    verdict = Verdict.STABLE
    for sign in signs:
        if sign < 0:
            return Verdict.UNSTABLE
        if sign == 0:
            verdict = Verdict.STRICTLY_SEMISTABLE
    return verdict


def k0_verdict(gamma: K0Class, subobject_classes: Iterable[K0Class], s: SlopeData) -> Verdict:
    """Stability verdict of a class against a set of proper subobject classes."""
    rchar = character_from_slope(s, gamma)
    signs = []
    for beta in subobject_classes:
        if not (beta.is_effective() and gamma.dominates(beta)) or beta == gamma:
            raise DomainError(
                f"subobject class {beta.multiplicities} outside the open box of "
                f"{gamma.multiplicities}"
            )
        signs.append(rchar.sign(beta))
    return _verdict_from_signs(signs)


def character_verdict(character: Character, subobject_classes: Iterable[K0Class]) -> Verdict:
    """Verdict under an integer character: positive strictly on every class
    for stable, nonnegative for semistable."""
    gamma = character.bound_class
    signs = []
    for beta in subobject_classes:
        if not (beta.is_effective() and gamma.dominates(beta)) or beta == gamma:
            raise DomainError(
                f"subobject class {beta.multiplicities} outside the open box of "
                f"{gamma.multiplicities}"
            )
        value = character.evaluate(beta)
        signs.append((value > 0) - (value < 0))
    return _verdict_from_signs(signs)
