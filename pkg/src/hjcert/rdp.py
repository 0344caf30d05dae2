"""Root lattices of rational double points.

When S has only rational double points, K_{S'} = f^*K_S lies in the rank-one
complement of R, so K_{S'}^2 = m^2 |det R| with rank R = 9 - K_{S'}^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterator

from .hj_core import HJString, continuant
from .inequality import CaseInstance
from .obstruction import Configuration, Elimination, eliminate


@dataclass(frozen=True, order=True)
class ADELattice:
    kind: str  # "A", "D" or "E"
    n: int

    def __post_init__(self):
        ok = (
            (self.kind == "A" and self.n >= 1)
            or (self.kind == "D" and self.n >= 4)
            or (self.kind == "E" and self.n in (6, 7, 8))
        )
        if not ok:
            raise ValueError(f"no root lattice {self.kind}_{self.n}")

    @property
    def rank(self) -> int:
        return self.n

    @property
    def det(self) -> int:
        return ade_det(self)

    def __str__(self) -> str:
        return f"{self.kind}{self.n}"

    def edges(self) -> list[tuple[int, int]]:
        """Dynkin diagram edges on vertices 0..n-1."""
        if self.kind == "A":
            return [(i, i + 1) for i in range(self.n - 1)]
        if self.kind == "D":
            return [(i, i + 1) for i in range(self.n - 2)] + [(self.n - 3, self.n - 1)]
        # E_n: chain of n-1 vertices, extra vertex on the third
        return [(i, i + 1) for i in range(self.n - 2)] + [(2, self.n - 1)]

    def intersection_matrix(self) -> list[list[int]]:
        m = [[-2 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        for i, j in self.edges():
            m[i][j] = m[j][i] = 1
        return m

    def chain(self) -> HJString | None:
        """The Hirzebruch-Jung string when the lattice is of type A."""
        return HJString([2] * self.n) if self.kind == "A" else None


def ade_det(lattice: ADELattice) -> int:
    if lattice.kind == "A":
        return lattice.n + 1
    if lattice.kind == "D":
        return 4
    return {6: 3, 7: 2, 8: 1}[lattice.n]


def cofactor_det(m: list[list[int]]) -> int:
    """Determinant by Laplace expansion along the first row, skipping zeros."""
    size = len(m)
    if size == 0:
        return 1
    if size == 1:
        return m[0][0]
    total = 0
    for j, entry in enumerate(m[0]):
        if entry:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * entry * cofactor_det(minor)
    return total


def matrix_det(lattice: ADELattice) -> int:
    """|det| of the intersection matrix, independent of :func:`ade_det`."""
    if lattice.kind == "A":
        return continuant(lattice.chain())
    return abs(cofactor_det(lattice.intersection_matrix()))


@dataclass(frozen=True)
class ADESum:
    summands: tuple[ADELattice, ...]

    def __init__(self, summands):
        object.__setattr__(self, "summands", tuple(sorted(summands)))

    @property
    def rank(self) -> int:
        return sum(s.rank for s in self.summands)

    @property
    def det(self) -> int:
        return prod(s.det for s in self.summands)

    def __str__(self) -> str:
        return "+".join(str(s) for s in self.summands)

    @classmethod
    def parse(cls, text: str) -> "ADESum":
        return cls(ADELattice(part[0], int(part[1:])) for part in text.split("+"))


def _components_of_rank(rank: int) -> list[ADELattice]:
    out = [ADELattice("A", n) for n in range(1, rank + 1)]
    out += [ADELattice("D", n) for n in range(4, rank + 1)]
    out += [ADELattice("E", n) for n in (6, 7, 8) if n <= rank]
    return sorted(out)


def _sums_of_rank(rank: int) -> Iterator[ADESum]:
    comps = _components_of_rank(rank)

    def rec(start: int, remaining: int, chosen: list[ADELattice]):
        if remaining == 0:
            yield ADESum(chosen)
            return
        for i in range(start, len(comps)):
            c = comps[i]
            if c.rank <= remaining:
                chosen.append(c)
                yield from rec(i, remaining - c.rank, chosen)
                chosen.pop()

    yield from rec(0, rank, [])


def _square_multiplier(ksq: int, det: int) -> int | None:
    if ksq % det:
        return None
    q = ksq // det
    m = isqrt(q)
    return m if m >= 1 and m * m == q else None


def enumerate_rdp_candidates(ksq_values=range(1, 9)) -> list[tuple[int, ADESum, int]]:
    """(K'^2, R, m) with rank R = 9 - K'^2, coprime summand dets and K'^2 = m^2 det R."""
    out = []
    for ksq in ksq_values:
        for lat in _sums_of_rank(9 - ksq):
            dets = [s.det for s in lat.summands]
            if any(gcd(a, b) > 1 for i, a in enumerate(dets) for b in dets[i + 1 :]):
                continue
            m = _square_multiplier(ksq, lat.det)
            if m is not None:
                out.append((ksq, lat, m))
    return out


@dataclass(frozen=True)
class RdpVerdict:
    ksq: int
    lattice: ADESum
    m: int
    ruled_out: bool
    case: CaseInstance | None
    elimination: Elimination | None
    note: str


def cross_eliminate() -> list[RdpVerdict]:
    """Hand every candidate made of chains of length <= 3 to the case engine."""
    out = []
    for ksq, lat, m in enumerate_rdp_candidates():
        chains = [s.chain() for s in lat.summands]
        if any(c is None for c in chains):
            out.append(RdpVerdict(ksq, lat, m, False, None, None, "non-cyclic summand"))
            continue
        if any(len(c) > 3 for c in chains):
            out.append(RdpVerdict(ksq, lat, m, False, None, None, "string longer than 3 curves"))
            continue
        config = Configuration(chains)
        case = CaseInstance.make(12 - ksq, config.lengths)
        elim = eliminate(case, config)
        note = elim.reason.describe()
        out.append(RdpVerdict(ksq, lat, m, elim.eliminated, case, elim, note))
    return out


def lhs_rhs(verdict: RdpVerdict) -> tuple[Fraction, Fraction] | None:
    if verdict.elimination is None:
        return None
    reason = verdict.elimination.reason
    return (reason.lhs, reason.rhs) if reason.kind == "InequalityViolated" else None
