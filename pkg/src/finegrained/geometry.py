"""String Nesting to Range Prefix Search to Counting Colored Inversions.

The insertion gadgets work over any totally ordered element type. The
final step specializes them to strings over {0,1,2,3,4}, where 0 sits
below and 4 above every symbol of the remapped input.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import Any, Sequence

from .core import int_encode
from .instances import RpsInstance, SnInstance
from .inversions import CciInstance, colored_inversion_count, insert_subseq, rank_compress

LOW, HIGH = 0, 4


def sn_to_rps(inst: SnInstance) -> RpsInstance:
    """Sort P by Y, reverse the X side, and turn each (A, B) into a range query on reversed X."""
    ordered = sorted(inst.pairs_p, key=lambda xy: (xy[1], xy[0]))
    ys = [y for _, y in ordered]
    top = (max(inst.sigma - 1, 1),) * (inst.m + 1)
    queries = []
    for a, b in inst.pairs_q:
        lo = bisect_left(ys, b)
        hi = bisect_left(ys, b + top)
        queries.append((lo, hi, a[::-1]))
    return RpsInstance([x[::-1] for x, _ in ordered], queries, inst.m)


def query_gadget(a: Sequence, b: int, e: int, q: tuple, low: Any = LOW, high: Any = HIGH) -> tuple[list[int], list, list]:
    """Colors C' and arrays A_lh, A_hl for one query; their colored counts differ by twice the hits."""
    colors = insert_subseq([0] * len(a), [(b + 1, 1), (e + 2, 1)])
    q_low, q_high = tuple(q) + (low,), tuple(q) + (high,)
    a_lh = insert_subseq(list(a), [(b + 1, q_low), (e + 2, q_high)])
    a_hl = insert_subseq(list(a), [(b + 1, q_high), (e + 2, q_low)])
    return colors, a_lh, a_hl


def single_insert(a: Sequence, p: int, x: Any) -> tuple[list[int], list]:
    return insert_subseq([0] * len(a), [(p, 1)]), insert_subseq(list(a), [(p, x)])


def batch_insert(a: Sequence, items: Sequence[tuple[int, Any]]) -> tuple[list[int], list]:
    """Insert every (p, X) at once; positions are sorted and shifted by the insertions before them."""
    ps = [p for p, _ in items]
    if ps != sorted(ps):
        raise ValueError("batch positions must be non-decreasing")
    shifted = [(p + i, x) for i, (p, x) in enumerate(items)]
    return insert_subseq([0] * len(a), [(p, 1) for p, _ in shifted]), insert_subseq(list(a), shifted)


def _remap(s: Sequence[int]) -> tuple[int, ...]:
    # 1 -> 3 first, then 0 -> 2
    return tuple(3 if c == 1 else 2 if c == 0 else c for c in s)


def rps_gadget_strings(inst: RpsInstance) -> tuple[list[int], list[tuple], list[tuple]]:
    """Colors plus string arrays A_add and A_sub before the integer mapping."""
    strings = [_remap(s) + (1,) for s in inst.strings]
    items = []
    for i, (b, e, q) in enumerate(inst.queries):
        q = _remap(q)
        items.append((b + 1, i, 0, q + (HIGH,), q + (LOW,)))
        items.append((e + 1, i, 1, q + (LOW,), q + (HIGH,)))
    items.sort(key=lambda it: it[:3])
    colors, add = batch_insert(strings, [(p, x) for p, _, _, x, _ in items])
    _, sub = batch_insert(strings, [(p, y) for p, _, _, _, y in items])
    return colors, add, sub


def rps_to_cci(inst: RpsInstance) -> tuple[list[int], list[int], list[int]]:
    """CCI arrays whose colored counts differ by twice the total number of query hits."""
    colors, add, sub = rps_gadget_strings(inst)
    width = inst.length + 1
    a_add = rank_compress([int_encode(width, 5, x) for x in add])
    a_sub = rank_compress([int_encode(width, 5, x) for x in sub])
    return colors, a_add, a_sub


def cci_difference(colors: Sequence[int], a_add: Sequence, a_sub: Sequence) -> int:
    return colored_inversion_count(CciInstance(list(colors), list(a_add))) - colored_inversion_count(
        CciInstance(list(colors), list(a_sub))
    )
