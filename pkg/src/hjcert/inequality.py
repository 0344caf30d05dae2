"""Global numerics of a hypothetical non-rational surface.

With q = p_g = 0 Noether gives c2 + K'^2 = 12, and Picard number one forces the
exceptional curves to number b2(S') - 1 = c2 - 3. The Miyaoka-type inequality
then reads ``lhs(c2, r) <= rhs(config)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .hj_core import HJString, contribution

C2_MIN = 4
C2_MAX = 15
MAX_POINTS = 4
MAX_COMPONENTS = 3


class InvalidCaseError(ValueError):
    """Raised when surface numerics or a case instance are out of range."""


@dataclass(frozen=True)
class SurfaceNumerics:
    c2: int
    ksq_prime: int
    b2: int

    def __post_init__(self):
        if self.c2 + self.ksq_prime != 12:
            raise InvalidCaseError(f"c2 + K'^2 = {self.c2 + self.ksq_prime}, expected 12")
        if self.b2 != self.c2 - 2:
            raise InvalidCaseError(f"b2 = {self.b2}, expected c2 - 2 = {self.c2 - 2}")

    @classmethod
    def from_c2(cls, c2: int) -> "SurfaceNumerics":
        return cls(c2, 12 - c2, c2 - 2)


@dataclass(frozen=True)
class CaseInstance:
    numerics: SurfaceNumerics
    r: int
    partition: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.partition, reverse=True))
        object.__setattr__(self, "partition", parts)
        if not 1 <= self.r <= MAX_POINTS:
            raise InvalidCaseError(f"r = {self.r} outside 1..{MAX_POINTS}")
        if len(parts) != self.r:
            raise InvalidCaseError(f"partition {parts} has {len(parts)} parts, r = {self.r}")
        if any(not 1 <= p <= MAX_COMPONENTS for p in parts):
            raise InvalidCaseError(f"partition {parts} has a part outside 1..{MAX_COMPONENTS}")
        if sum(parts) != curve_budget(self.c2):
            raise InvalidCaseError(
                f"partition {parts} sums to {sum(parts)}, budget is {self.c2 - 3}"
            )

    @classmethod
    def make(cls, c2: int, partition: Iterable[int]) -> "CaseInstance":
        parts = tuple(partition)
        return cls(SurfaceNumerics.from_c2(c2), len(parts), parts)

    @property
    def c2(self) -> int:
        return self.numerics.c2

    @property
    def ksq_prime(self) -> int:
        return self.numerics.ksq_prime

    @property
    def lhs(self) -> Fraction:
        return lhs(self.c2, self.r)


def curve_budget(c2: int) -> int:
    if not C2_MIN <= c2 <= C2_MAX:
        raise InvalidCaseError(f"c2 = {c2} outside {C2_MIN}..{C2_MAX}")
    return c2 - 3


def lhs(c2: int, r: int) -> Fraction:
    # sum e(E_p) = budget + r, each string of k curves has Euler number k + 1
    return Fraction(curve_budget(c2) + r - c2) + Fraction(12 - c2, 3)


def lhs_termwise(c2: int, partition: Iterable[int]) -> Fraction:
    """sum e(E_p) - c2 + K'^2/3 evaluated slot by slot."""
    euler = sum(k + 1 for k in partition)
    return Fraction(euler - c2) + Fraction(12 - c2, 3)


def rhs(config: Iterable[HJString]) -> Fraction:
    strings = list(config)
    if not strings:
        raise InvalidCaseError("empty configuration")
    return sum((contribution(s) for s in strings), Fraction(0))


def primes(count: int) -> list[int]:
    """The first ``count`` primes."""
    out: list[int] = []
    n = 2
    while len(out) < count:
        if all(n % p for p in out if p * p <= n):
            out.append(n)
        n += 1
    return out


def reciprocal_prime_bound(r: int) -> tuple[Fraction, bool]:
    """Sum of 1/p_i over the first r primes, and whether it is <= r - 3.

    Pairwise coprime local orders m_1 < ... < m_r > 1 satisfy m_i >= p_i, so a
    true flag rules out r singular points.
    """
    if r < 5:
        raise InvalidCaseError(f"prime bound is vacuous for r = {r} < 5")
    total = sum((Fraction(1, p) for p in primes(r)), Fraction(0))
    return total, total <= r - 3


def reciprocal_prime_bound_unit(r: int) -> tuple[Fraction, bool]:
    """Variant with one trivial abelianization: 1/2 + sum of 1/p_i, i < r, against r - 3."""
    if r < 5:
        raise InvalidCaseError(f"prime bound is vacuous for r = {r} < 5")
    total = Fraction(1, 2) + sum((Fraction(1, p) for p in primes(r - 1)), Fraction(0))
    return total, total <= r - 3


def _partitions(total: int, parts: int, largest: int) -> Iterable[tuple[int, ...]]:
    # non-increasing tuples, emitted in lexicographically descending order
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(largest, total), 0, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def enumerate_case_instances(c2_values: Iterable[int] | None = None) -> list[CaseInstance]:
    if c2_values is None:
        c2_values = range(C2_MIN, C2_MAX + 1)
    out = []
    for c2 in sorted(set(c2_values)):
        budget = curve_budget(c2)
        r_min = max(1, -(-budget // MAX_COMPONENTS))
        for r in range(r_min, MAX_POINTS + 1):
            for parts in _partitions(budget, r, MAX_COMPONENTS):
                out.append(CaseInstance.make(c2, parts))
    return out
