"""Lattice obstructions and the per-configuration elimination test.

For S with H_1(S^0, Z) = 0 the sublattice R spanned by exceptional curves is
primitive in the unimodular H^2(S', Z), with a rank-one orthogonal complement.
Two arithmetic consequences are tested here: the local determinants are
pairwise coprime, and |det R| * (f^*K_S)^2 is the square of an integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, NamedTuple

from .hj_core import HJString, continuant, dp_squared, format_rational
from .inequality import CaseInstance, InvalidCaseError, rhs


def _config_key(s: HJString):
    return (-len(s), s.entries)


@dataclass(frozen=True)
class Configuration:
    """One string per singular point, canonical up to orientation and order."""

    strings: tuple[HJString, ...]

    def __init__(self, strings: Iterable):
        items = [s if isinstance(s, HJString) else HJString(s) for s in strings]
        if not items:
            raise InvalidCaseError("empty configuration")
        canon = tuple(sorted((s.canonical() for s in items), key=_config_key))
        object.__setattr__(self, "strings", canon)

    def __iter__(self):
        return iter(self.strings)

    def __len__(self) -> int:
        return len(self.strings)

    def __str__(self) -> str:
        return "+".join(str(s) for s in self.strings)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.strings)

    def sort_key(self):
        return tuple(_config_key(s) for s in self.strings)


class EliminationReason:
    kind = "EliminationReason"

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        for name, value in vars(self).items():
            out[name] = value if isinstance(value, int) else format_rational(value)
        return out

    @staticmethod
    def from_dict(data: dict) -> "EliminationReason":
        cls = _REASONS[data["kind"]]
        kwargs = {}
        for name, value in data.items():
            if name == "kind":
                continue
            kwargs[name] = value if isinstance(value, int) else Fraction(value)
        return cls(**kwargs)

    def describe(self) -> str:
        fields = ", ".join(
            f"{k}={v if isinstance(v, int) else format_rational(v)}" for k, v in vars(self).items()
        )
        return f"{self.kind}({fields})"


@dataclass(frozen=True)
class InequalityViolated(EliminationReason):
    lhs: Fraction
    rhs: Fraction
    kind = "InequalityViolated"


@dataclass(frozen=True)
class CoprimalityFailed(EliminationReason):
    det_i: int
    det_j: int
    gcd: int
    kind = "CoprimalityFailed"


@dataclass(frozen=True)
class NonpositiveCanonicalSquare(EliminationReason):
    fstar_ksq: Fraction
    kind = "NonpositiveCanonicalSquare"


@dataclass(frozen=True)
class SquareObstruction(EliminationReason):
    det_R: int
    fstar_ksq: Fraction
    product: Fraction
    kind = "SquareObstruction"


@dataclass(frozen=True)
class Survives(EliminationReason):
    kind = "Survives"


_REASONS = {
    cls.kind: cls
    for cls in (InequalityViolated, CoprimalityFailed, NonpositiveCanonicalSquare, SquareObstruction, Survives)
}


@dataclass(frozen=True)
class Elimination:
    reason: EliminationReason
    audit: tuple[EliminationReason, ...] = field(default=())

    @property
    def eliminated(self) -> bool:
        return not isinstance(self.reason, Survives)


class SquareCheck(NamedTuple):
    is_square: bool
    product: Fraction
    root: int | None


def determinants(config: Configuration) -> list[int]:
    return [continuant(s) for s in config]


def coprime_failure(dets: Iterable[int]) -> CoprimalityFailed | None:
    """First pair (i < j, row-major) with a common factor, or None."""
    dets = list(dets)
    if not dets:
        raise ValueError("empty determinant list")
    for i in range(len(dets)):
        for j in range(i + 1, len(dets)):
            g = gcd(dets[i], dets[j])
            if g > 1:
                return CoprimalityFailed(dets[i], dets[j], g)
    return None


def pairwise_coprime(dets: Iterable[int]) -> bool:
    return coprime_failure(dets) is None


def fstar_ksq(ksq_prime: int, config: Configuration) -> Fraction:
    """(f^*K_S)^2 = K_{S'}^2 - sum D_p^2."""
    return Fraction(ksq_prime) - sum((dp_squared(s) for s in config), Fraction(0))


def _square_test(product: Fraction) -> SquareCheck:
    if product.denominator != 1 or product < 0:
        return SquareCheck(False, product, None)
    root = isqrt(product.numerator)
    if root * root == product.numerator:
        return SquareCheck(True, product, root)
    return SquareCheck(False, product, None)


def square_condition(det_R: int, fksq) -> SquareCheck:
    """Is det_R * fksq the square of an integer?"""
    fksq = Fraction(fksq)
    if det_R < 1:
        raise ValueError(f"det_R = {det_R} must be positive")
    if fksq <= 0:
        raise ValueError(f"(f^*K_S)^2 = {fksq} must be positive; apply the positivity filter first")
    return _square_test(det_R * fksq)


def eliminate(case: CaseInstance, config: Configuration, positivity: bool = True) -> Elimination:
    """Apply inequality, coprimality, positivity and square tests in that order.

    The first failing test is the reason; every failing test lands in the audit.
    With ``positivity=False`` the square test runs on the raw product, where a
    negative product is never a square.
    """
    if not isinstance(config, Configuration):
        config = Configuration(config)
    if config.lengths != case.partition:
        raise InvalidCaseError(f"configuration {config} does not match partition {case.partition}")

    audit: list[EliminationReason] = []
    left, right = case.lhs, rhs(config)
    if right < left:
        audit.append(InequalityViolated(left, right))

    dets = determinants(config)
    failure = coprime_failure(dets)
    if failure is not None:
        audit.append(failure)

    fk = fstar_ksq(case.ksq_prime, config)
    det_R = prod(dets)
    if positivity and fk <= 0:
        audit.append(NonpositiveCanonicalSquare(fk))
    else:
        check = _square_test(det_R * fk)
        if not check.is_square:
            audit.append(SquareObstruction(det_R, fk, check.product))

    reason = audit[0] if audit else Survives()
    return Elimination(reason, tuple(audit))
