"""Inversion and colored-inversion counting, plus subsequence insert/delete."""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from typing import Any, Iterable, Sequence


@dataclass(frozen=True)
class CciInstance:
    colors: list[int]
    values: list[Any]

    def __post_init__(self):
        if len(self.colors) != len(self.values):
            raise ValueError("colors and values differ in length")
        if any(c not in (0, 1) for c in self.colors):
            raise ValueError("colors must be 0 or 1")


def _merge_count(values: Sequence, colors: Sequence[int] | None) -> tuple[list[list], int]:
    """Merge sort returning the sorted values of each color and the (colored) inversion count.

    With colors, only pairs of differing colors count and one sorted list is
    kept per color; without, everything lives in a single list.
    """
    n = len(values)
    if n <= 64:
        # small blocks: insertion into sorted lists
        lists: list[list] = [[]] if colors is None else [[], []]
        total = 0
        for idx, v in enumerate(values):
            c = 0 if colors is None else colors[idx]
            other = lists[c if colors is None else 1 - c]
            total += len(other) - bisect_right(other, v)
            insort(lists[c], v)
        return lists, total
    mid = n // 2
    left, a = _merge_count(values[:mid], None if colors is None else colors[:mid])
    right, b = _merge_count(values[mid:], None if colors is None else colors[mid:])
    total = a + b
    # a left element beats every right element it exceeds, when the colors differ
    pairs = [(0, 0)] if colors is None else [(1, 0), (0, 1)]
    for i, j in pairs:
        lo = left[i]
        size = len(lo)
        total += sum(size - bisect_right(lo, x) for x in right[j])
    return [sorted(x + y) for x, y in zip(left, right)], total


def inversion_count(a: Sequence) -> int:
    """Pairs i < j with a[i] > a[j]."""
    return _merge_count(list(a), None)[1]


def colored_inversion_count(inst: CciInstance) -> int:
    """Pairs i < j with differing colors and values[i] > values[j]."""
    return _merge_count(list(inst.values), list(inst.colors))[1]


def split_by_color(inst: CciInstance) -> tuple[list, list]:
    zeros = [v for v, c in zip(inst.values, inst.colors) if c == 0]
    ones = [v for v, c in zip(inst.values, inst.colors) if c == 1]
    return zeros, ones


def cci_from_ci(inst: CciInstance) -> int:
    """Colored count as Inv(A) - Inv(A0) - Inv(A1)."""
    zeros, ones = split_by_color(inst)
    return inversion_count(inst.values) - inversion_count(zeros) - inversion_count(ones)


def duplicate_instance(a: Sequence) -> CciInstance:
    """Each element twice, colored 0 then 1."""
    colors, values = [], []
    for x in a:
        colors += [0, 1]
        values += [x, x]
    return CciInstance(colors, values)


def ci_from_cci(a: Sequence) -> int:
    """Inversion count of a, read off the duplicated colored instance."""
    doubled = colored_inversion_count(duplicate_instance(a))
    assert doubled % 2 == 0
    return doubled // 2


def insert_subseq(s: Sequence, insertions: Iterable[tuple[int, Any]]) -> list:
    """The sequence s' with s'[p] = c for each (p, c) and s left after removing those slots."""
    insertions = list(insertions)
    total = len(s) + len(insertions)
    prev = 0
    for p, _ in insertions:
        if p <= prev:
            raise ValueError("insert positions must be strictly increasing")
        if p > total:
            raise ValueError(f"insert position {p} beyond result length {total}")
        prev = p
    out, it = [], iter(s)
    k = 0
    for pos in range(1, total + 1):
        if k < len(insertions) and insertions[k][0] == pos:
            out.append(insertions[k][1])
            k += 1
        else:
            out.append(next(it))
    return out


def delete_subseq(s: Sequence, positions: Iterable[int]) -> list:
    drop = set(positions)
    if any(not 1 <= p <= len(s) for p in drop):
        raise ValueError("delete position out of range")
    return [x for i, x in enumerate(s, start=1) if i not in drop]


def rank_compress(values: Sequence) -> list[int]:
    """Dense ranks in [0..len) preserving every strict comparison."""
    order = {v: r for r, v in enumerate(sorted(set(values)))}
    return [order[v] for v in values]
