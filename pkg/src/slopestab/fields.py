"""Exact coefficient fields: the rationals and prime fields GF(p).

Elements are plain Python values (Fraction for Q, int residues 0..p-1 for
GF(p)); the field object supplies the arithmetic.  Both are exact; floats
never appear.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FormatError
from .ordered import rat

MAX_PRIME = 2**16


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RationalField:
    """The field of exact rationals."""

    tag = "q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def sub(self, a: Fraction, b: Fraction) -> Fraction:
        return a - b

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, q: Fraction) -> Fraction:
        return q

    def from_str(self, s: str) -> Fraction:
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational literal {s!r}") from exc

    def to_str(self, a: Fraction) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    @property
    def elements(self) -> None:
        return None  # not enumerable

    def __repr__(self) -> str:
        return "QQ"


@dataclass(frozen=True)
class PrimeField:
    """GF(p) with residues 0..p-1 as elements."""

    p: int

    def __post_init__(self) -> None:
        if self.p >= MAX_PRIME or not _is_prime(self.p):
            raise DomainError(f"prime field order must be a prime below 2^16, got {self.p}")

    @property
    def tag(self) -> str:
        return f"fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a: int) -> bool:
        return a % self.p == 0

    def from_int(self, n: int) -> int:
        return n % self.p

    def from_fraction(self, q: Fraction) -> int:
        if q.denominator % self.p == 0:
            raise DomainError(
                f"{q} is not {self.p}-integral; cannot reduce into GF({self.p})"
            )
        return (q.numerator * pow(q.denominator, -1, self.p)) % self.p

    def from_str(self, s: str) -> int:
        try:
            return self.from_fraction(rat(s))
        except DomainError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad residue literal {s!r}") from exc

    def to_str(self, a: int) -> str:
        return str(a % self.p)

    @property
    def elements(self) -> list[int]:
        return list(range(self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


FieldSpec = RationalField | PrimeField

QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str) -> FieldSpec:
    """Parse a field tag: "q" or "fp:<p>"."""
    if tag == "q":
        return QQ
    if tag.startswith("fp:"):
        try:
            p = int(tag[3:])
        except ValueError as exc:
            raise FormatError(f"bad field tag {tag!r}") from exc
        try:
            return PrimeField(p)
        except DomainError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"bad field tag {tag!r} (expected 'q' or 'fp:<p>')")
