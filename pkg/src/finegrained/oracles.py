"""Brute-force ground truth.

Everything here is computed straight from the definitions and shares no
code with the modules it checks. Size guards keep accidental quadratic
work bounded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .instances import DmInstance, RpsInstance, SnInstance

ARRAY_LIMIT = 4096
COUNT_LIMIT = 8192


def oracle_dm(inst: DmInstance) -> bool:
    if inst.sigma <= 256:
        text = bytes(inst.text)
        return any(bytes(p) in text for p in inst.patterns)
    m, t = inst.m, inst.text
    return any(tuple(t[j : j + m]) == p for p in inst.patterns for j in range(len(t) - m + 1))


def _nests(a, b, x, y) -> bool:
    return len(a) <= len(x) and tuple(x[len(x) - len(a) :]) == tuple(a) and tuple(y[: len(b)]) == tuple(b)


def oracle_sn(inst: SnInstance) -> bool:
    return any(_nests(a, b, x, y) for a, b in inst.pairs_q for x, y in inst.pairs_p)


def oracle_rps(inst: RpsInstance) -> tuple[bool, list[int]]:
    counts = []
    for b, e, q in inst.queries:
        counts.append(sum(1 for t in range(b + 1, e + 1) if tuple(inst.strings[t - 1][: len(q)]) == tuple(q)))
    return any(counts), counts


@dataclass(frozen=True)
class OracleArrays:
    lpf: list[int]
    lpnf: list[int]
    sa: list[int]
    bwt: list[int]
    z: int
    z_no: int


def _lcp(t, i, j) -> int:
    n, k = len(t), 0
    while i + k < n and j + k < n and t[i + k] == t[j + k]:
        k += 1
    return k


def _greedy(values) -> int:
    count, j = 0, 0
    while j < len(values):
        j += max(1, values[j])
        count += 1
    return count


def oracle_arrays(t) -> OracleArrays:
    t = tuple(t)
    n = len(t)
    if n == 0:
        raise ValueError("empty text")
    if n > ARRAY_LIMIT:
        raise ValueError(f"oracle_arrays is limited to texts of length {ARRAY_LIMIT}")
    lpf = [max((_lcp(t, i, j) for i in range(j)), default=0) for j in range(n)]
    lpnf = [max((min(_lcp(t, i, j), j - i) for i in range(j)), default=0) for j in range(n)]
    sa = sorted(range(1, n + 1), key=lambda i: t[i - 1 :])
    bwt = [t[i - 2] if i > 1 else t[n - 1] for i in sa]
    return OracleArrays(lpf, lpnf, sa, bwt, _greedy(lpf), _greedy(lpnf))


def oracle_lcf(s1, s2) -> int:
    """Longest common substring by trying every pair of start positions."""
    if len(s1) * len(s2) > ARRAY_LIMIT * ARRAY_LIMIT // 16:
        raise ValueError("oracle_lcf input too large")
    best = 0
    for i in range(len(s1)):
        for j in range(len(s2)):
            k = 0
            while i + k < len(s1) and j + k < len(s2) and s1[i + k] == s2[j + k]:
                k += 1
            best = max(best, k)
    return best


def _pair_matrix(values):
    """Boolean matrix of (i < j and values[i] > values[j]), or None for non-integer values."""
    if not all(isinstance(v, (int, np.integer)) for v in values):
        return None
    a = np.asarray(values, dtype=np.int64)
    return np.triu(a[:, None] > a[None, :], k=1)


def oracle_inversions(a) -> int:
    if len(a) > COUNT_LIMIT:
        raise ValueError(f"oracle_inversions is limited to arrays of length {COUNT_LIMIT}")
    pairs = _pair_matrix(a)
    if pairs is not None:
        return int(pairs.sum())
    return sum(1 for i in range(len(a)) for j in range(i + 1, len(a)) if a[i] > a[j])


def oracle_counts(inst) -> int:
    """Colored inversions of anything with `colors` and `values` attributes."""
    colors, values = inst.colors, inst.values
    if len(values) > COUNT_LIMIT:
        raise ValueError(f"oracle_counts is limited to arrays of length {COUNT_LIMIT}")
    if len(colors) != len(values):
        raise ValueError("colors and values differ in length")
    pairs = _pair_matrix(values)
    if pairs is not None:
        c = np.asarray(colors, dtype=np.int64)
        return int((pairs & (c[:, None] != c[None, :])).sum())
    n = len(values)
    return sum(
        1 for i in range(n) for j in range(i + 1, n) if colors[i] != colors[j] and values[i] > values[j]
    )
