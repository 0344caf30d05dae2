"""Finite, sound enumeration of configurations and the full case scan.

Every string of length k has gamma <= 1/(k+1): the continuant is at least
k + 1 and D_p^2 <= 0, with equality for the all-2 string. Together with the
sum identities for the discrepancies this caps the weight of any string whose
contribution reaches a threshold, so each slot of a configuration draws from a
finite candidate list.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

from .hj_core import HJString, InvalidStringError, contribution
from .inequality import (
    C2_MAX,
    C2_MIN,
    MAX_COMPONENTS,
    CaseInstance,
    InvalidCaseError,
    curve_budget,
    enumerate_case_instances,
    reciprocal_prime_bound,
    reciprocal_prime_bound_unit,
)
from .obstruction import Configuration, Elimination, continuant, eliminate

CERTIFICATE_VERSION = "1"
GUARD_BAND = 3


def max_contribution(length: int) -> Fraction:
    """Largest gamma over strings of the given length (the all-2 string)."""
    return Fraction(1, length + 1)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def weight_bound(t, length: int) -> int:
    """Largest weight (sum of entries) a string with gamma >= t can have, before the guard band.

    length 3: gamma < 1/4 - (W - 8)/3, length 2: gamma < 1/3 - (W - 6)/3.
    length 1: d^2 + (3t - 4) d + 1 <= 0, solved exactly on the integers.
    """
    t = Fraction(t)
    if length == 3:
        return max(6, _ceil(8 + 3 * (Fraction(1, 4) - t)) - 1)
    if length == 2:
        return max(4, _ceil(6 + 3 * (Fraction(1, 3) - t)) - 1)
    if length == 1:
        # convex in d, so the solution set is an interval; walk past the vertex
        vertex = (4 - 3 * t) / 2
        d, last = 2, 1
        while d <= vertex or d * d + (3 * t - 4) * d + 1 <= 0:
            if d * d + (3 * t - 4) * d + 1 <= 0:
                last = d
            d += 1
        return max(2, last)
    raise InvalidStringError(f"length {length} outside 1..{MAX_COMPONENTS}")


def strings_up_to_weight(length: int, max_weight: int, canonical: bool = True) -> Iterator[HJString]:
    """All strings of a given length with entries >= 2 and weight <= max_weight."""

    def rec(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 0:
            yield prefix
            return
        for n in range(2, remaining - 2 * (slots - 1) + 1):
            yield from rec(prefix + (n,), remaining - n, slots - 1)

    for entries in rec((), max_weight, length):
        if not canonical or entries <= entries[::-1]:
            yield HJString(entries)


def _gamma_order(s: HJString):
    return (-contribution(s), -len(s), s.entries)


def strings_with_contribution_at_least(t, length: int) -> list[HJString]:
    """All canonical strings of ``length`` with gamma >= t, gamma descending."""
    if length not in (1, 2, 3):
        raise InvalidStringError(f"length {length} outside 1..{MAX_COMPONENTS}")
    t = Fraction(t)
    bound = weight_bound(t, length) + GUARD_BAND
    found = [s for s in strings_up_to_weight(length, bound) if contribution(s) >= t]
    return sorted(found, key=_gamma_order)


def positive_catalog() -> dict[HJString, Fraction]:
    """Strings of length <= 3 with strictly positive contribution."""
    out = {}
    for length in (3, 2, 1):
        for s in sorted(strings_with_contribution_at_least(0, length), key=lambda s: s.entries):
            g = contribution(s)
            if g > 0:
                out[s] = g
    return out


@dataclass(frozen=True)
class SlotBound:
    length: int
    threshold: Fraction
    max_weight: int
    candidates: int


def _slot_candidates(need: Fraction, lengths: tuple[int, ...]) -> tuple[dict[int, list[HJString]], list[SlotBound]]:
    total = sum(max_contribution(k) for k in lengths)
    cands, bounds = {}, []
    for k in sorted(set(lengths), reverse=True):
        t = need - (total - max_contribution(k))
        cands[k] = strings_with_contribution_at_least(t, k)
        bounds.append(SlotBound(k, t, weight_bound(t, k) + GUARD_BAND, len(cands[k])))
    return cands, bounds


def enumerate_survivors(case: CaseInstance) -> list[tuple[Configuration, Fraction]]:
    """All canonical configurations on the case partition with sum of gamma >= lhs."""
    return _survivors(case)[0]


def _survivors(case: CaseInstance):
    need = case.lhs
    lengths = case.partition
    cands, bounds = _slot_candidates(need, lengths)
    gammas = {k: [contribution(s) for s in cands[k]] for k in cands}
    r = len(lengths)
    found: list[tuple[Configuration, Fraction]] = []

    def optimistic_tail(i: int, g_here: Fraction) -> Fraction:
        # slots after i: same length group is capped by the current choice
        tail = Fraction(0)
        for j in range(i + 1, r):
            if lengths[j] == lengths[i]:
                tail += g_here
            elif gammas[lengths[j]]:
                tail += gammas[lengths[j]][0]
        return tail

    def rec(i: int, start: int, chosen: list[HJString], acc: Fraction):
        if i == r:
            if acc >= need:
                found.append((Configuration(chosen), acc))
            return
        k = lengths[i]
        if i > 0 and lengths[i - 1] != k:
            start = 0
        for idx in range(start, len(cands[k])):
            g = gammas[k][idx]
            if acc + g + optimistic_tail(i, g) < need:
                break
            chosen.append(cands[k][idx])
            rec(i + 1, idx, chosen, acc + g)
            chosen.pop()

    rec(0, 0, [], Fraction(0))
    found.sort(key=lambda item: item[0].sort_key())
    return found, bounds


def _best_coprime(r: int, lengths: tuple[int, ...] | None, exclude: frozenset) -> tuple[Fraction, Configuration]:
    if lengths is not None:
        lengths = tuple(sorted(lengths, reverse=True))
        allowed = sorted(set(lengths), reverse=True)
    else:
        allowed = [1, 2, 3]

    def pool(thresholds: dict[int, Fraction]) -> list[HJString]:
        items = []
        for k in allowed:
            items.extend(s for s in strings_with_contribution_at_least(thresholds[k], k) if s not in exclude)
        return sorted(items, key=_gamma_order)

    def need_counts() -> dict[int, int] | None:
        if lengths is None:
            return None
        return {k: lengths.count(k) for k in allowed}

    def greedy(items: list[HJString]):
        counts, chosen, dets = need_counts(), [], []
        for s in items:
            if counts is not None and counts[len(s)] == 0:
                continue
            d = continuant(s)
            if all(gcd(d, e) == 1 for e in dets):
                chosen.append(s)
                dets.append(d)
                if counts is not None:
                    counts[len(s)] -= 1
                if len(chosen) == r:
                    return chosen
        return None

    t0 = Fraction(-1)
    while True:
        start = greedy(pool({k: t0 for k in allowed}))
        if start is not None:
            break
        t0 -= 1
    best_val = sum((contribution(s) for s in start), Fraction(0))
    best = list(start)

    # any configuration reaching best_val has every member above these thresholds
    if lengths is None:
        thresholds = {k: best_val - (r - 1) * max_contribution(1) for k in allowed}
    else:
        total = sum(max_contribution(k) for k in lengths)
        thresholds = {k: best_val - (total - max_contribution(k)) for k in allowed}
    items = pool(thresholds)
    gam = [contribution(s) for s in items]
    dets = [continuant(s) for s in items]

    def rec(start: int, chosen: list[int], acc: Fraction, counts):
        nonlocal best_val, best
        slots = r - len(chosen)
        if slots == 0:
            if acc > best_val:
                best_val, best = acc, [items[i] for i in chosen]
            return
        for idx in range(start, len(items) - slots + 1):
            if acc + sum(gam[idx : idx + slots]) <= best_val:
                break
            if counts is not None and counts[len(items[idx])] == 0:
                continue
            if any(gcd(dets[idx], dets[j]) > 1 for j in chosen):
                continue
            if counts is not None:
                counts[len(items[idx])] -= 1
            chosen.append(idx)
            rec(idx + 1, chosen, acc + gam[idx], counts)
            chosen.pop()
            if counts is not None:
                counts[len(items[idx])] += 1

    rec(0, [], Fraction(0), need_counts())
    return best_val, Configuration(best)


def max_rhs(r: int, exclude: Iterable = ()) -> tuple[Fraction, Configuration]:
    """Exact maximum of the summed contributions over r points with pairwise coprime orders."""
    if r < 3:
        raise InvalidCaseError(f"max_rhs needs r >= 3, got {r}")
    excluded = frozenset((s if isinstance(s, HJString) else HJString(s)).canonical() for s in exclude)
    return _best_coprime(r, None, excluded)


def best_coprime_candidate(case: CaseInstance) -> tuple[Fraction, Configuration]:
    """Maximum summed contribution over coprime configurations on the case partition."""
    return _best_coprime(case.r, case.partition, frozenset())


@dataclass(frozen=True)
class CaseReport:
    case: CaseInstance
    lhs: Fraction
    inequality_survivors: tuple[tuple[Configuration, Fraction], ...]
    eliminations: tuple[tuple[Configuration, Elimination], ...]
    exhaustiveness: tuple[SlotBound, ...]
    best_coprime: Fraction
    best_coprime_witness: Configuration

    @property
    def all_eliminated(self) -> bool:
        return all(e.eliminated for _, e in self.eliminations)


@dataclass(frozen=True)
class Axiom:
    name: str
    statement: str
    checks: tuple[tuple[int, Fraction, bool], ...] = ()


@dataclass(frozen=True)
class Certificate:
    version: str
    axioms: tuple[Axiom, ...]
    scan: tuple[str, ...]
    notes: tuple[str, ...]
    case_reports: tuple[CaseReport, ...]
    verdict: bool
    positivity_filter: bool = True


def build_report(case: CaseInstance, positivity: bool = True) -> CaseReport:
    survivors, bounds = _survivors(case)
    elims = tuple((cfg, eliminate(case, cfg, positivity=positivity)) for cfg, _ in survivors)
    best, witness = best_coprime_candidate(case)
    return CaseReport(case, case.lhs, tuple(survivors), elims, tuple(bounds), best, witness)


def verify_case(c2: int, positivity: bool = True, r: int | None = None) -> list[CaseReport]:
    curve_budget(c2)
    cases = enumerate_case_instances([c2])
    if r is not None:
        cases = [c for c in cases if c.r == r]
        if not cases:
            raise InvalidCaseError(f"no case instance with c2 = {c2}, r = {r}")
    return [build_report(c, positivity) for c in cases]


def _verify_case_job(args):
    c2, positivity = args
    return verify_case(c2, positivity)


def axioms() -> tuple[Axiom, ...]:
    checks = []
    for r in range(5, 21):
        total, ok = reciprocal_prime_bound(r)
        unit_total, unit_ok = reciprocal_prime_bound_unit(r)
        checks.append((r, total, ok and unit_ok))
    return (
        Axiom(
            "miyaoka",
            "For a non-rational S with quotient singularities, H^2(S,Q)=Q and H_1(S^0,Z)=0: "
            "sum e(E_p) - c2(S') + K_{S'}^2/3 <= sum (1/|G_p| + D_p^2/3).",
        ),
        Axiom(
            "no_fake_plane",
            "No fake projective plane has H_1(S,Z)=0, so c2(S')=3 does not occur and c2(S') >= 4.",
        ),
        Axiom(
            "at_most_four_points",
            "A non-rational S has at most 4 singular points (uses K_S^2 > 0); rechecked by the "
            "reciprocal prime bounds sum_{i<=r} 1/p_i <= r-3 and 1/2 + sum_{i<r} 1/p_i <= r-3.",
            tuple(checks),
        ),
    )


SCAN_NOTES = (
    "c2 >= 4: c2 = 3 forces S smooth, excluded by the no_fake_plane axiom.",
    "c2 <= 15: at most 4 points with at most 3 curves each gives c2 - 3 <= 12.",
    "For each c2 every r with ceil((c2-3)/3) <= r <= 4 and every partition of c2-3 into r parts from {1,2,3} is scanned.",
    "Parametric families c2 = 3s+3, 3s+4, 3s+2 reduce to c2 in 12..15 under the same bounds.",
)


def _remark_note(reports: Iterable[CaseReport]) -> str:
    coprime = []
    for rep in reports:
        if rep.case.r != 4:
            continue
        for cfg, elim in rep.eliminations:
            if not any(reason.kind == "CoprimalityFailed" for reason in elim.audit):
                coprime.append(cfg)
    with_23 = [c for c in coprime if {2, 3} <= {continuant(s) for s in c}]
    return (
        f"informational: {len(coprime)} four-point inequality survivors have coprime orders; "
        f"{len(with_23)} of them contain orders 2 and 3."
    )


def verify_theorem(
    positivity: bool = True,
    jobs: int = 1,
    c2_values: Iterable[int] | None = None,
) -> Certificate:
    values = sorted(set(c2_values)) if c2_values is not None else list(range(C2_MIN, C2_MAX + 1))
    for c2 in values:
        curve_budget(c2)
    work = [(c2, positivity) for c2 in values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(_verify_case_job, work))
    else:
        groups = [_verify_case_job(w) for w in work]
    reports = tuple(rep for group in groups for rep in group)
    verdict = all(rep.all_eliminated for rep in reports)
    return Certificate(
        CERTIFICATE_VERSION,
        axioms(),
        SCAN_NOTES,
        (_remark_note(reports),),
        reports,
        verdict,
        positivity,
    )


def first_survivor(cert: Certificate):
    for rep in cert.case_reports:
        for cfg, elim in rep.eliminations:
            if not elim.eliminated:
                return rep, cfg
    return None
