"""Exact invariants of Hirzebruch-Jung strings.

A string ``(n_1, ..., n_k)`` with every ``n_j >= 2`` is the dual graph of the
minimal resolution of a cyclic quotient surface singularity. Everything here is
computed with :class:`fractions.Fraction` or plain integers; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "InvalidStringError",
    "HJString",
    "SingularityProfile",
    "intersection_matrix",
    "continuant",
    "solve_discrepancies",
    "dp_squared",
    "dp_squared_quadratic",
    "contribution",
    "hj_expansion",
    "profile",
    "length_one_contribution",
    "batch_invariants",
    "format_rational",
]


class InvalidStringError(ValueError):
    """Raised for malformed strings or singularity types."""


@dataclass(frozen=True, order=False)
class HJString:
    entries: tuple[int, ...]

    def __init__(self, entries: Sequence[int]):
        entries = tuple(entries)
        if not entries:
            raise InvalidStringError("a string needs at least one curve")
        for n in entries:
            if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
                raise InvalidStringError(f"entry {n!r} is not an integer")
            if n < 2:
                raise InvalidStringError(f"entry {n} below 2")
        object.__setattr__(self, "entries", tuple(int(n) for n in entries))

    @classmethod
    def parse(cls, text: str) -> "HJString":
        """Parse ``"2,2,3"`` (parentheses and blanks tolerated)."""
        body = text.strip().strip("()").strip()
        if not body:
            raise InvalidStringError(f"empty string spec {text!r}")
        try:
            values = [int(part) for part in body.split(",")]
        except ValueError:
            raise InvalidStringError(f"malformed string spec {text!r}") from None
        return cls(values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    def __repr__(self) -> str:
        return f"HJString({self.entries})"

    def reversed(self) -> "HJString":
        return HJString(self.entries[::-1])

    def canonical(self) -> "HJString":
        """The lexicographically smaller of the string and its reverse."""
        rev = self.entries[::-1]
        return self if self.entries <= rev else HJString(rev)

    def is_canonical(self) -> bool:
        return self.entries <= self.entries[::-1]

    @property
    def weight(self) -> int:
        """Sum of the entries."""
        return sum(self.entries)


@dataclass(frozen=True)
class SingularityProfile:
    string: HJString
    order: int
    discrepancies: tuple[Fraction, ...]
    d_squared: Fraction
    contribution: Fraction

    @property
    def discrepancy_numerators(self) -> tuple[int, ...]:
        """Discrepancies scaled by the order (always integers)."""
        return tuple(int(a * self.order) for a in self.discrepancies)


def _as_string(s) -> HJString:
    return s if isinstance(s, HJString) else HJString(s)


def intersection_matrix(s) -> list[list[int]]:
    s = _as_string(s)
    k = len(s)
    m = [[0] * k for _ in range(k)]
    for j, n in enumerate(s):
        m[j][j] = -n
        if j + 1 < k:
            m[j][j + 1] = m[j + 1][j] = 1
    return m


def continuant(s) -> int:
    """|det| of the intersection matrix, by K_j = n_j K_{j-1} - K_{j-2}."""
    prev, cur = 0, 1
    for n in _as_string(s):
        prev, cur = cur, n * cur - prev
    return cur


@lru_cache(maxsize=None)
def _solve(entries: tuple[int, ...]) -> tuple[Fraction, ...]:
    # n_j a_j - a_{j-1} - a_{j+1} = n_j - 2, forward sweep then back substitution
    k = len(entries)
    diag = [Fraction(n) for n in entries]
    rhs = [Fraction(n - 2) for n in entries]
    for j in range(1, k):
        factor = Fraction(-1) / diag[j - 1]
        diag[j] -= factor * -1
        rhs[j] -= factor * rhs[j - 1]
    a = [Fraction(0)] * k
    a[-1] = rhs[-1] / diag[-1]
    for j in range(k - 2, -1, -1):
        a[j] = (rhs[j] + a[j + 1]) / diag[j]
    return tuple(a)


def solve_discrepancies(s) -> tuple[Fraction, ...]:
    """Discrepancy coefficients a_j with D_p = sum a_j E_j."""
    return _solve(_as_string(s).entries)


def dp_squared(s) -> Fraction:
    """D_p^2 = -sum a_j (n_j - 2)."""
    s = _as_string(s)
    a = solve_discrepancies(s)
    return -sum((aj * (n - 2) for aj, n in zip(a, s)), Fraction(0))


def dp_squared_quadratic(s) -> Fraction:
    """D_p^2 evaluated as the quadratic form a^T M a."""
    s = _as_string(s)
    a = solve_discrepancies(s)
    m = intersection_matrix(s)
    k = len(s)
    return sum(
        (a[i] * m[i][j] * a[j] for i in range(k) for j in range(k) if m[i][j]),
        Fraction(0),
    )


def contribution(s) -> Fraction:
    """gamma = 1/|G_p| + D_p^2/3."""
    return profile(s).contribution


@lru_cache(maxsize=None)
def _profile(s: HJString) -> SingularityProfile:
    order = continuant(s)
    a = solve_discrepancies(s)
    dsq = dp_squared(s)
    if dsq != dp_squared_quadratic(s):
        raise ArithmeticError(f"D^2 formulas disagree on {s}")
    if not all(0 <= aj < 1 for aj in a):
        raise ArithmeticError(f"discrepancy out of [0, 1) on {s}")
    return SingularityProfile(s, order, a, dsq, Fraction(1, order) + dsq / 3)


def profile(s) -> SingularityProfile:
    return _profile(_as_string(s))


def length_one_contribution(d: int) -> Fraction:
    """Closed form (3 - (d-2)^2) / (3d) for a single (-d)-curve."""
    if d < 2:
        raise InvalidStringError(f"entry {d} below 2")
    return Fraction(3 - (d - 2) ** 2, 3 * d)


def hj_expansion(n: int, q: int) -> HJString:
    """The string of a singularity of type (1/n)(1, q): n/q = n_1 - 1/(n_2 - ...)."""
    if n < 2 or not 1 <= q < n:
        raise InvalidStringError(f"type 1/{n}(1,{q}) needs n >= 2 and 1 <= q < n")
    if gcd(n, q) != 1:
        raise InvalidStringError(f"type 1/{n}(1,{q}) is not coprime")
    out = []
    num, den = n, q
    while den:
        c = -(-num // den)
        out.append(c)
        num, den = den, c * den - num
    return HJString(out)


def batch_invariants(strings: np.ndarray) -> dict[str, np.ndarray]:
    """Integer invariants for a batch of equal-length strings.

    ``strings`` is an ``(N, k)`` integer array. Uses the continuant formula
    ``order * a_j = order - K(n_1..n_{j-1}) - K(n_{j+1}..n_k)`` so every output
    is an exact int64 array: ``order``, ``num`` (N, k) discrepancy numerators,
    ``dsq_num`` with D^2 = -dsq_num / order, and ``gamma_num`` with
    gamma = gamma_num / (3 * order).
    """
    arr = np.asarray(strings, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] == 0:
        raise InvalidStringError("expected an (N, k) array of strings")
    if (arr < 2).any():
        raise InvalidStringError("entry below 2")
    n_rows, k = arr.shape
    one = np.ones(n_rows, dtype=np.int64)
    zero = np.zeros(n_rows, dtype=np.int64)
    # left[j] = K(n_1..n_j), right[j] = K(n_{j+1}..n_k)
    left = [one]
    p, c = zero, one
    for j in range(k):
        p, c = c, arr[:, j] * c - p
        left.append(c)
    right = [one] * (k + 1)
    p, c = zero, one
    for j in range(k - 1, -1, -1):
        p, c = c, arr[:, j] * c - p
        right[j] = c
    order = left[k]
    num = np.stack([order - left[j] - right[j + 1] for j in range(k)], axis=1)
    dsq_num = (num * (arr - 2)).sum(axis=1)
    return {
        "order": order,
        "num": num,
        "dsq_num": dsq_num,
        "gamma_num": 3 - dsq_num,
    }


def format_rational(x) -> str:
    """``p/q`` in lowest terms, ``p`` when integral."""
    return str(Fraction(x))
