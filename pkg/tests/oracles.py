"""Brute-force reference computations, deliberately independent of hjcert internals."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import numpy as np


def exact_det(m):
    """Determinant by fraction-exact Gaussian elimination with row swaps."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def tridiag(entries):
    k = len(entries)
    return [[-entries[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(k)] for i in range(k)]


def gauss_solve(m, b):
    """Solve m x = b exactly (dense Gauss-Jordan)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(m, b)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[-1] for row in a]


def gamma(entries) -> Fraction:
    """1/|det| + D^2/3 from a dense solve of K.E_j = n_j - 2."""
    entries = tuple(entries)
    k = len(entries)
    # (f^*K - sum a_j E_j) . E_i = n_i - 2 with f^*K . E_i = 0
    m = [[-x for x in row] for row in tridiag(entries)]
    a = gauss_solve(m, [n - 2 for n in entries])
    mat = tridiag(entries)
    dsq = sum(a[i] * mat[i][j] * a[j] for i in range(k) for j in range(k))
    return Fraction(1) / abs(exact_det(mat)) + dsq / 3


def all_strings(length, max_weight):
    """Every string (both orientations) of the given length with weight <= max_weight."""
    top = max_weight - 2 * (length - 1)
    for entries in itertools.product(range(2, top + 1), repeat=length):
        if sum(entries) <= max_weight:
            yield entries


def canon(entries):
    entries = tuple(entries)
    return min(entries, entries[::-1])


def brute_strings_at_least(t, length, max_weight):
    seen = {canon(e) for e in all_strings(length, max_weight)}
    return {e for e in seen if gamma(e) >= t}


def brute_survivors(lengths, need, max_weight, gammas=None):
    """All multisets of canonical strings on ``lengths`` with summed gamma >= need.

    Returns a set of tuples of canonical entry tuples sorted by (-len, entries).
    Floats only prefilter; each hit is confirmed with exact fractions.
    """
    gammas = {} if gammas is None else gammas
    counts = Counter(lengths)
    groups = []
    for k, c in sorted(counts.items(), reverse=True):
        pool = sorted({canon(e) for e in all_strings(k, max_weight)})
        for e in pool:
            if e not in gammas:
                gammas[e] = gamma(e)
        combos = list(itertools.combinations_with_replacement(pool, c))
        sums = np.array([float(sum(gammas[e] for e in combo)) for combo in combos])
        groups.append((combos, sums))

    groups.sort(key=lambda g: len(g[0]))
    *rest, (big_combos, big_sums) = groups
    rest_combos = [()]
    rest_sums = np.zeros(1)
    for combos, sums in rest:
        rest_sums = (rest_sums[:, None] + sums[None, :]).ravel()
        rest_combos = [a + b for a in rest_combos for b in combos]

    found = set()
    limit = float(need) - 1e-9
    for combo, s in zip(big_combos, big_sums):
        for idx in np.nonzero(rest_sums + s >= limit)[0]:
            cfg = combo + rest_combos[idx]
            if sum((gammas[e] for e in cfg), Fraction(0)) >= need:
                found.add(tuple(sorted(cfg, key=lambda e: (-len(e), e))))
    return found


def first_primes(count):
    out, n = [], 2
    while len(out) < count:
        if all(n % d for d in range(2, int(n**0.5) + 1)):
            out.append(n)
        n += 1
    return out
