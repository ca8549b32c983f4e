"""Baseline string structures and codecs.

Texts are sequences of non-negative integer symbols. Positions exposed by
the API are 1-based, so ``sa[0]`` holds the starting position of the
lexicographically smallest suffix. Lexicographic order treats a proper
prefix as smaller.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np

OVERLAPPING = "overlapping"
NON_OVERLAPPING = "non-overlapping"
LZ_VARIANTS = (OVERLAPPING, NON_OVERLAPPING)


def symbols(s: str) -> list[int]:
    """Parse a digit string ("0120") or a lowercase word ("abba") into symbols."""
    if s.isdigit():
        return [int(c) for c in s]
    return [ord(c) - ord("a") for c in s]


@dataclass(frozen=True)
class SuffixStructures:
    sa: list[int]
    isa: list[int]
    bwt: list[int]


def suffix_array(t: Sequence[int]) -> list[int]:
    """Suffix array by prefix doubling on dense ranks."""
    n = len(t)
    if n == 0:
        raise ValueError("empty text has no suffix array")
    _, rank = np.unique(np.asarray(t, dtype=np.int64), return_inverse=True)
    rank = rank.astype(np.int64).reshape(-1) + 1
    order = np.argsort(rank, kind="stable")
    h = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if h < n:
            second[: n - h] = rank[h:]
        key = rank * (n + 2) + second
        order = np.argsort(key, kind="stable")
        sorted_key = key[order]
        fresh = np.empty(n, dtype=np.int64)
        fresh[order] = np.concatenate(([1], 1 + np.cumsum(sorted_key[1:] != sorted_key[:-1])))
        rank = fresh
        if rank.max() == n or h >= n:
            break
        h *= 2
    return (order + 1).tolist()


def inverse_permutation(sa: Sequence[int]) -> list[int]:
    isa = [0] * len(sa)
    for i, pos in enumerate(sa, start=1):
        isa[pos - 1] = i
    return isa


def suffix_structures(t: Sequence[int]) -> SuffixStructures:
    sa = suffix_array(t)
    isa = inverse_permutation(sa)
    n = len(t)
    # cyclic previous character: the suffix starting at 1 is preceded by T[n]
    bwt = [t[pos - 2] if pos > 1 else t[n - 1] for pos in sa]
    return SuffixStructures(sa, isa, bwt)


def run_count(s: Sequence[int]) -> int:
    """Number of maximal runs of equal symbols."""
    return sum(1 for i in range(len(s)) if i == 0 or s[i] != s[i - 1])


def rlbwt_size(t: Sequence[int]) -> int:
    """Number of runs in the BWT of t."""
    return run_count(suffix_structures(t).bwt)


class _Matcher:
    """Longest-previous-factor queries answered with C-level substring search."""

    def __init__(self, t: Sequence[int]):
        self.n = len(t)
        distinct = sorted(set(t))
        if len(distinct) > 256:
            raise ValueError("more than 256 distinct symbols")
        if distinct and distinct[-1] < 256:
            self.buf = bytes(t)
        else:
            code = {a: i for i, a in enumerate(distinct)}
            self.buf = bytes(code[a] for a in t)

    def common(self, i: int, j: int, limit: int) -> int:
        """Length of the longest common prefix of buf[i:] and buf[j:], capped at limit."""
        buf = self.buf
        lo, step = 0, 1
        while lo < limit:
            hi = min(limit, lo + step)
            if buf[i + lo : i + hi] == buf[j + lo : j + hi]:
                lo = hi
                step *= 2
            elif step == 1:
                break
            else:
                step = 1
        return lo

    def longest(self, j: int, lower: int, overlap: bool) -> tuple[int, int]:
        """Longest prefix of buf[j:] with an occurrence starting before j.

        Returns (length, 0-based source start or -1). `lower` is a length
        already known to be attainable.
        """
        buf, n = self.buf, self.n
        length, src = 0, -1
        if lower > 0:
            end = j + lower - 1 if overlap else j
            src = buf.find(buf[j : j + lower], 0, end)
            length = lower
        while j + length < n:
            want = length + 1
            end = j + want - 1 if overlap else j
            # nothing before the first occurrence of a shorter prefix can hold a longer one
            found = buf.find(buf[j : j + want], max(src, 0), end)
            if found < 0:
                break
            src = found
            limit = n - j
            if not overlap:
                limit = min(limit, j - found)
            length = want + self.common(found + want, j + want, limit - want)
        return length, src


def _check_variant(variant: str) -> bool:
    if variant not in LZ_VARIANTS:
        raise ValueError(f"unknown LZ variant {variant!r}")
    return variant == OVERLAPPING


def lpf_arrays(t: Sequence[int]) -> tuple[list[int], list[int]]:
    """LPF and LPnF arrays; entry i-1 holds the value for position i."""
    if len(t) == 0:
        raise ValueError("empty text")
    m = _Matcher(t)
    out = []
    for overlap in (True, False):
        arr, prev = [], 0
        for j in range(m.n):
            # the value can drop by at most one from one position to the next
            prev, _ = m.longest(j, max(0, prev - 1), overlap)
            arr.append(prev)
        out.append(arr)
    return out[0], out[1]


@dataclass(frozen=True)
class Phrase:
    start: int
    length: int
    source: int | None = None
    literal: int | None = None


@dataclass(frozen=True)
class LzFactorization:
    phrases: list[Phrase]
    variant: str

    def __len__(self) -> int:
        return len(self.phrases)

    def pieces(self, t: Sequence[int]) -> list[list[int]]:
        return [list(t[p.start - 1 : p.start - 1 + p.length]) for p in self.phrases]


def lz_factorize(t: Sequence[int], variant: str = OVERLAPPING) -> LzFactorization:
    """Greedy LZ77 factorization (phrase length max(1, LPF) at each phrase start)."""
    overlap = _check_variant(variant)
    if len(t) == 0:
        raise ValueError("empty text")
    m = _Matcher(t)
    phrases, j = [], 0
    while j < m.n:
        length, src = m.longest(j, 0, overlap)
        if length == 0:
            phrases.append(Phrase(j + 1, 1, literal=t[j]))
            j += 1
        else:
            phrases.append(Phrase(j + 1, length, source=src + 1))
            j += length
    return LzFactorization(phrases, variant)


def lz_size(t: Sequence[int], variant: str = OVERLAPPING) -> int:
    """Number of LZ77 phrases; the empty text has none."""
    if len(t) == 0:
        _check_variant(variant)
        return 0
    return len(lz_factorize(t, variant))


def lz_prefix_sizes(t: Sequence[int], lengths: Sequence[int], variant: str = OVERLAPPING) -> list[int]:
    """z(t[1..d]) for each d, from a single factorization of t.

    Capping at d never changes an earlier greedy choice, so the prefix's
    phrases are t's phrases that start at or before d, the last one cut short.
    """
    if any(not 0 <= d <= len(t) for d in lengths):
        raise ValueError("prefix length out of range")
    if len(t) == 0:
        return [0 for _ in lengths]
    starts = [p.start for p in lz_factorize(t, variant).phrases]
    return [bisect_right(starts, d) for d in lengths]


def lce(t: Sequence[int], i: int, j: int) -> int:
    """Longest common extension of the suffixes starting at 1-based i and j."""
    n, length = len(t), 0
    while i + length <= n and j + length <= n and t[i + length - 1] == t[j + length - 1]:
        length += 1
    return length


def shortest_period(s: Sequence[int]) -> int:
    """Smallest p >= 1 with s[i] = s[i+p] for all valid i (|s| for the empty string)."""
    n = len(s)
    if n == 0:
        return 0
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and s[i] != s[k]:
            k = fail[k - 1]
        if s[i] == s[k]:
            k += 1
        fail[i] = k
    return n - fail[-1]


def occurrences(p: Sequence[int], t: Sequence[int]) -> list[int]:
    """Sorted 1-based starting positions of p in t; the empty p matches everywhere."""
    m, n = len(p), len(t)
    if m == 0:
        return list(range(1, n + 1))
    p = list(p)
    first = p[0]
    return [j + 1 for j in range(n - m + 1) if t[j] == first and list(t[j : j + m]) == p]


def compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Three-way lexicographic comparison."""
    a, b = list(a), list(b)
    return (a > b) - (a < b)


def range_beg(p: Sequence[int], t: Sequence[int]) -> int:
    """Number of suffixes of t that are lexicographically smaller than p."""
    p = list(p)
    return sum(1 for j in range(len(t)) if list(t[j:]) < p)


def range_end(p: Sequence[int], t: Sequence[int]) -> int:
    return range_beg(p, t) + len(occurrences(p, t))


def lcp_array(t: Sequence[int], sa: Sequence[int]) -> list[int]:
    """Kasai LCP: entry i is lcp of suffixes sa[i-1] and sa[i] (entry 0 is 0)."""
    n = len(t)
    rank = inverse_permutation(sa)
    lcp = [0] * n
    h = 0
    for i in range(n):
        r = rank[i] - 1
        if r == 0:
            h = 0
            continue
        j = sa[r - 1] - 1
        while i + h < n and j + h < n and t[i + h] == t[j + h]:
            h += 1
        lcp[r] = h
        if h:
            h -= 1
    return lcp


def lcf(s1: Sequence[int], s2: Sequence[int]) -> int:
    """Length of a longest common substring, via the suffix array of s1 # s2."""
    if not s1 or not s2:
        return 0
    joined = [a + 1 for a in s1] + [0] + [a + 1 for a in s2]
    sa = suffix_array(joined)
    lcp = lcp_array(joined, sa)
    cut = len(s1) + 1
    best = 0
    for r in range(1, len(sa)):
        # adjacent suffixes from different sides; the unique separator stops every match
        if (sa[r] <= cut) != (sa[r - 1] <= cut) and lcp[r] > best:
            best = lcp[r]
    return best


def infinite_at(t: Sequence[int], i: int) -> int:
    """Symbol i of the infinite power of t, for any integer i."""
    if len(t) == 0:
        raise ValueError("infinite power of the empty text is undefined")
    return t[(i - 1) % len(t)]


def infinite_slice(t: Sequence[int], i: int, j: int) -> list[int]:
    """Fragment [i..j) of the infinite power of t."""
    return [infinite_at(t, x) for x in range(i, j)]


def reverse(s: Sequence[int]) -> list[int]:
    return list(reversed(s))


def int_encode(m: int, sigma: int, x: Sequence[int]) -> int:
    """Order-preserving integer for a string of length at most m over [0..sigma)."""
    if m <= 0 or sigma <= 1:
        raise ValueError("int_encode needs m > 0 and sigma > 1")
    if len(x) > m:
        raise ValueError("string longer than m")
    value = 0
    digits = list(x) + [0] * (2 * m - 2 * len(x)) + [sigma - 1] * len(x)
    for d in digits:
        if not 0 <= d < sigma:
            raise ValueError(f"symbol {d} outside [0..{sigma})")
        value = value * sigma + d
    return value


def bin_k(k: int, x: int) -> list[int]:
    """k-bit binary representation of x with leading zeros."""
    if k < 0 or not 0 <= x < 2**k:
        raise ValueError(f"{x} does not fit in {k} bits")
    return [(x >> (k - 1 - i)) & 1 for i in range(k)]


def pad(x: Sequence[int]) -> list[int]:
    """Insert a 0 after every symbol."""
    out = []
    for a in x:
        out += [a, 0]
    return out


def substitute(u: Sequence[int], c: int, v: Sequence[int]) -> list[int]:
    """Replace every occurrence of symbol c in u with the string v."""
    out = []
    for a in u:
        if a == c:
            out.extend(v)
        else:
            out.append(a)
    return out


def ceil_log2(x: int) -> int:
    """Smallest k >= 0 with 2**k >= x."""
    return max(0, (x - 1).bit_length())
