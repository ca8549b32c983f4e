"""Dictionary Matching and String Nesting, in both directions.

Holds the locally consistent sampling (synchronizing sets), the canonical
decomposition of highly periodic fragments, the occurrence
characterizations built on them, and the reductions with their alphabet
codes. Positions are 1-based throughout.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .core import bin_k, ceil_log2, infinite_slice, occurrences, shortest_period
from .instances import DmInstance, SnInstance

Str = tuple[int, ...]


def _is_highly_periodic(s: Sequence[int], tau: int) -> bool:
    # per(s) <= tau / 3, kept in integers
    return 3 * shortest_period(s) <= tau


def _check_tau(n: int, tau: int) -> None:
    if not 1 <= tau <= n // 2:
        raise ValueError(f"tau must lie in [1..{n // 2}], got {tau}")


def periodic_positions(t: Sequence[int], tau: int) -> list[int]:
    """Positions i in [1..n-3tau+2] whose window of length 3tau-1 has period at most tau/3."""
    n, w = len(t), 3 * tau - 1
    return [i for i in range(1, n - w + 2) if _is_highly_periodic(t[i - 1 : i - 1 + w], tau)]


# synchronizing sets


@dataclass(frozen=True)
class SyncSet:
    positions: tuple[int, ...]
    tau: int

    def __contains__(self, i: int) -> bool:
        return i in set(self.positions)


@dataclass(frozen=True)
class SyncCheck:
    ok: bool
    condition: str | None = None
    index: int | None = None
    detail: str = ""


def build_sync_set(t: Sequence[int], tau: int) -> SyncSet:
    """A tau-synchronizing set from lexicographic window identifiers.

    Windows of length tau with period at most tau/3 rank above every other
    window, and i joins the set when the minimum identifier over [i..i+tau]
    sits at i or at i+tau. A block made only of such windows contributes
    nothing, which keeps density exact on long periodic runs.
    """
    t = tuple(t)
    n = len(t)
    _check_tau(n, tau)
    windows = [t[j : j + tau] for j in range(n - tau + 1)]
    keys = sorted({(_is_highly_periodic(w, tau), w) for w in windows})
    rank = {key: r for r, key in enumerate(keys)}
    flags = [_is_highly_periodic(w, tau) for w in windows]
    ident = [rank[(f, w)] for f, w in zip(flags, windows)]
    chosen = []
    for i in range(1, n - 2 * tau + 2):
        block = ident[i - 1 : i + tau]
        low = min(block)
        if all(flags[i - 1 : i + tau]):
            continue
        if block[0] == low or block[-1] == low:
            chosen.append(i)
    return SyncSet(tuple(chosen), tau)


def verify_sync_set(t: Sequence[int], tau: int, s: SyncSet | Sequence[int]) -> SyncCheck:
    """Exhaustive check of the consistency and density conditions."""
    t = tuple(t)
    n = len(t)
    members = set(s.positions if isinstance(s, SyncSet) else s)
    last = n - 2 * tau + 1
    stray = sorted(i for i in members if not 1 <= i <= last)
    if stray:
        return SyncCheck(False, "range", stray[0], f"position {stray[0]} outside [1..{last}]")
    seen: dict[Str, tuple[int, bool]] = {}
    for i in range(1, last + 1):
        w = t[i - 1 : i - 1 + 2 * tau]
        here = i in members
        if w in seen and seen[w][1] != here:
            first = seen[w][0]
            return SyncCheck(False, "consistency", i, f"windows at {first} and {i} are equal but disagree")
        seen.setdefault(w, (i, here))
    periodic = set(periodic_positions(t, tau))
    for i in range(1, n - 3 * tau + 3):
        empty = not any(j in members for j in range(i, i + tau))
        if empty != (i in periodic):
            return SyncCheck(False, "density", i, f"empty={empty} but periodic={i in periodic}")
    return SyncCheck(True)


def successor(s: SyncSet, x: int) -> int:
    return s.positions[bisect_left(s.positions, x)]


def dist_prefixes(t: Sequence[int], s: SyncSet) -> set[Str]:
    """Distinguishing prefixes T[j .. succ(j) + 2tau) over nonperiodic j."""
    t = tuple(t)
    tau, n = s.tau, len(t)
    periodic = set(periodic_positions(t, tau))
    out = set()
    for j in range(1, n - 3 * tau + 3):
        if j not in periodic:
            out.add(t[j - 1 : successor(s, j) + 2 * tau - 1])
    return out


def dist_prefix_of(p: Sequence[int], t: Sequence[int], s: SyncSet, known: set[Str] | None = None) -> int | None:
    """Length of the unique distinguishing prefix that prefixes p, if any."""
    p = tuple(p)
    prefixes = dist_prefixes(t, s) if known is None else known
    hits = [d for d in prefixes if p[: len(d)] == d]
    if len(hits) > 1:
        raise AssertionError("distinguishing prefixes are not prefix-free")
    return len(hits[0]) if hits else None


# periodic fragments


@dataclass(frozen=True)
class PeriodicProfile:
    is_periodic: bool
    root: Str = ()
    head: int = 0
    exp: int = 0
    tail: int = 0
    run_end: int = 0
    run_end_full: int = 0
    type: int = 0

    @property
    def period(self) -> int:
        return len(self.root)


def periodic_profile_pattern(p: Sequence[int], tau: int) -> PeriodicProfile:
    """Root, head, exponent, tail, run ends and type of a tau-periodic pattern."""
    p = tuple(p)
    m = len(p)
    if m < 3 * tau - 1 or not _is_highly_periodic(p[: 3 * tau - 1], tau):
        return PeriodicProfile(False)
    per = shortest_period(p[: 3 * tau - 1])
    rotations = [p[r : r + per] for r in range(per)]
    root = min(rotations)
    head = rotations.index(root)
    ext = 0
    while per + ext < m and p[ext] == p[per + ext]:
        ext += 1
    run_end = 1 + per + ext
    exp, tail = divmod(run_end - 1 - head, per)
    kind = 1 if run_end <= m and p[run_end - 1] > p[run_end - 1 - per] else -1
    return PeriodicProfile(True, root, head, exp, tail, run_end, 1 + head + exp * per, kind)


def periodic_profile_position(t: Sequence[int], tau: int, j: int) -> PeriodicProfile:
    """Profile of the text suffix starting at j, with run ends as text positions."""
    prof = periodic_profile_pattern(t[j - 1 :], tau)
    if not 1 <= j <= len(t) - 3 * tau + 2 or not prof.is_periodic:
        raise ValueError(f"position {j} is not highly periodic for tau={tau}")
    return PeriodicProfile(
        True, prof.root, prof.head, prof.exp, prof.tail,
        j + prof.run_end - 1, j + prof.run_end_full - 1, prof.type,
    )


@dataclass
class RSets:
    tau: int
    positions: list[int]
    block_starts: list[int]
    profiles: dict[int, PeriodicProfile] = field(default_factory=dict)

    def select(self, root: Str, head: int | None = None, exp: int | None = None, kind: int | None = None) -> list[int]:
        """Periodic positions filtered by root, and optionally head, exponent and type."""
        out = []
        for j in self.positions:
            prof = self.profiles[j]
            if prof.root != tuple(root):
                continue
            if head is not None and prof.head != head:
                continue
            if exp is not None and prof.exp != exp:
                continue
            if kind is not None and prof.type != kind:
                continue
            out.append(j)
        return out

    def roots(self) -> set[Str]:
        return {prof.root for prof in self.profiles.values()}


def r_sets(t: Sequence[int], tau: int) -> RSets:
    _check_tau(len(t), tau)
    positions = periodic_positions(t, tau)
    inside = set(positions)
    starts = [j for j in positions if j - 1 not in inside]
    profiles = {j: periodic_profile_position(t, tau, j) for j in positions}
    return RSets(tau, positions, starts, profiles)


def periodic_candidates(rs: RSets) -> set[int]:
    out = set()
    for x in rs.block_starts:
        prof = rs.profiles[x]
        out.add(prof.run_end_full)
        out.add(prof.run_end_full - prof.period)
    return out


# occurrence characterizations


def _anchored(t: Sequence[int], c: int, a: Str, b: Str, m: int) -> bool:
    """A is a suffix of T^inf[c-m..c) and B is a prefix of T^inf[c..c+m)."""
    left = infinite_slice(t, c - m, c)
    right = infinite_slice(t, c, c + m)
    return tuple(left[m - len(a) :]) == a and tuple(right[: len(b)]) == b


def nonperiodic_occurrences(p: Sequence[int], t: Sequence[int], s: SyncSet) -> list[int]:
    """Occurrences of a nonperiodic pattern, rebuilt from synchronizing positions."""
    p = tuple(p)
    length = dist_prefix_of(p, t, s)
    if length is None:
        return []
    shift = length - 2 * s.tau
    a, b = p[:shift], p[shift:]
    return sorted(x - shift for x in s.positions if _anchored(t, x, a, b, len(p)))


def partially_periodic_occurrences(p: Sequence[int], t: Sequence[int], rs: RSets) -> list[int]:
    """Occurrences of a periodic pattern whose run ends inside it, rebuilt from block run ends."""
    p = tuple(p)
    prof = periodic_profile_pattern(p, rs.tau)
    assert prof.is_periodic and prof.run_end <= len(p)
    shift = prof.run_end_full - 1
    a, b = p[:shift], p[shift:]
    out = set()
    for x in rs.block_starts:
        c = rs.profiles[x].run_end_full
        if _anchored(t, c, a, b, len(p)):
            out.add(c - shift)
    return sorted(out)


def fully_periodic_occurrences(p: Sequence[int], rs: RSets) -> list[int]:
    """Occurrences of a pattern that is one periodic run, read off the selector sets."""
    prof = periodic_profile_pattern(p, rs.tau)
    assert prof.is_periodic and prof.run_end == len(p) + 1
    same_exp = [x for x in rs.select(prof.root, prof.head, prof.exp) if rs.profiles[x].tail >= prof.tail]
    longer = [x for x in rs.select(prof.root, prof.head) if rs.profiles[x].exp > prof.exp]
    return sorted(set(same_exp) | set(longer))


def fully_periodic_witnesses(p: Sequence[int], rs: RSets) -> list[int]:
    """Same-exponent positions with a long enough tail, plus positions with exponent one higher."""
    prof = periodic_profile_pattern(p, rs.tau)
    same_exp = [x for x in rs.select(prof.root, prof.head, prof.exp) if rs.profiles[x].tail >= prof.tail]
    return sorted(set(same_exp) | set(rs.select(prof.root, prof.head, prof.exp + 1)))


def min_exponent(period: int, head: int, tau: int) -> int:
    """The exponent bound above which selector sizes shrink monotonically."""
    return -(-(3 * tau - 1 - head) // period) - 1


# Dictionary Matching to String Nesting


def default_tau(n: int) -> int:
    return max(1, int(math.log2(n)) // 6) if n > 1 else 1


def _ceil_log(sigma: int, n: int) -> int:
    e = 0
    while sigma**e < n:
        e += 1
    return e


@dataclass
class SplitReport:
    """How dm_to_sn treated each pattern; useful for tests and reports."""

    tau: int
    path: str
    kinds: list[str] = field(default_factory=list)
    candidates: int = 0


def _short_path(text: Str, inst: DmInstance, sigma: int) -> SnInstance:
    n = len(text)
    width = max(1, _ceil_log(sigma, n))
    wanted = max(1, math.ceil(n / max(1.0, math.log(n, sigma)))) if n > 1 else 1
    # both families need that many distinct strings; the nonzero family is the smaller one
    count = min(wanted, sigma**width - 1)
    strings = list(product(range(sigma), repeat=width))
    zeros = (0,) * width
    pairs_p = [(x, zeros) for x in strings[:count]]
    pairs_q = [((), y) for y in strings[1 : count + 1]]
    if any(occurrences(p, inst.text) for p in inst.patterns):
        pairs_q.append(((), zeros))
    return SnInstance(pairs_p, pairs_q, width, sigma)


def _split_point(p: Str, text: Str, tau: int, sync: SyncSet, known: set[Str]) -> tuple[int, str]:
    prof = periodic_profile_pattern(p, tau)
    if prof.is_periodic:
        return prof.run_end_full - 1, "periodic"
    length = dist_prefix_of(p, text, sync, known)
    return (0 if length is None else length - 2 * tau), "nonperiodic"


def dm_to_sn_ternary(inst: DmInstance, tau: int | None = None) -> tuple[SnInstance, SplitReport]:
    """String Nesting over {0,1,2} equivalent to the binary Dictionary Matching instance."""
    if inst.sigma != 2:
        raise ValueError("dm→SN expects a binary instance")
    text = tuple(inst.text) + (2,)
    n, m, sigma = len(text), inst.m, 3
    tau = default_tau(n) if tau is None else tau
    if tau < 1:
        raise ValueError("tau must be positive")
    if not inst.patterns or m < 3 * tau - 1 or tau > n // 2:
        return _short_path(text, inst, sigma), SplitReport(tau, "short")
    rs = r_sets(text, tau)
    sync = build_sync_set(text, tau)
    known = dist_prefixes(text, sync)
    report = SplitReport(tau, "long")
    pairs_q = []
    for p in inst.patterns:
        shift, kind = _split_point(p, text, tau, sync, known)
        report.kinds.append(kind)
        pairs_q.append((p[:shift], p[shift:]))
    cands: set[int] = set()
    if "nonperiodic" in report.kinds:
        cands |= set(sync.positions)
    if "periodic" in report.kinds:
        cands |= periodic_candidates(rs)
    report.candidates = len(cands)
    aux_p = sorted({(tuple(infinite_slice(text, c - m, c)), tuple(infinite_slice(text, c, c + m))) for c in cands})
    aux_q = sorted(set(pairs_q))
    final_q = [(a + (0,), (0,) + b) for a, b in aux_q]
    final_p = [((0,) + x + (0,), (0,) + y + (0,)) for x, y in aux_p]
    for a, b in aux_q:
        left = ((0,) * (m + 1) + (1,) + a + (1,))[-(m + 2) :]
        right = ((1,) + b + (1,) + (0,) * (m + 1))[: m + 2]
        final_p.append((left, right))
    return SnInstance(sorted(set(final_p)), final_q, m + 2, sigma), report


def sn_binarize(inst: SnInstance) -> SnInstance:
    """Fixed-width binary code applied symbol by symbol; nesting is preserved."""
    width = max(1, ceil_log2(inst.sigma))
    table = [tuple(bin_k(width, a)) for a in range(inst.sigma)]

    def code(s: Str) -> Str:
        return tuple(b for a in s for b in table[a])

    return SnInstance(
        [(code(x), code(y)) for x, y in inst.pairs_p],
        [(code(a), code(b)) for a, b in inst.pairs_q],
        inst.m * width,
        2,
    )


def dm_to_sn(inst: DmInstance, tau: int | None = None) -> SnInstance:
    """Binary String Nesting instance answer-equivalent to inst."""
    ternary, _ = dm_to_sn_ternary(inst, tau)
    return sn_binarize(ternary)


# String Nesting to Dictionary Matching


def sn_to_dm_quaternary(inst: SnInstance) -> DmInstance:
    """Text X1 2 Y1 3 X2 2 Y2 3 ... and patterns A 2 B."""
    if not inst.pairs_p:
        raise ValueError("String Nesting needs a nonempty P to build a text")
    if inst.sigma > 2:
        raise ValueError("sn→DM expects binary component strings")
    text: list[int] = []
    for i, (x, y) in enumerate(inst.pairs_p):
        if i:
            text.append(3)
        text += list(x) + [2] + list(y)
    patterns = sorted({tuple(a) + (2,) + tuple(b) for a, b in inst.pairs_q})
    return DmInstance(text, patterns, 4)


def dm_alphabet_reduce(inst: DmInstance) -> tuple[DmInstance, int]:
    """Binary DM instance via C(a) = 1^(k+1) 0 bin_k(a) 0; returns the stride 2k+3."""
    k = max(1, ceil_log2(inst.sigma))
    table = [[1] * (k + 1) + [0] + bin_k(k, a) + [0] for a in range(inst.sigma)]

    def code(s: Sequence[int]) -> list[int]:
        return [b for a in s for b in table[a]]

    return DmInstance(code(inst.text), [code(p) for p in inst.patterns], 2), 2 * k + 3


def sn_to_dm(inst: SnInstance) -> tuple[DmInstance, DmInstance]:
    """Quaternary and binary Dictionary Matching instances equivalent to inst."""
    quaternary = sn_to_dm_quaternary(inst)
    binary, _ = dm_alphabet_reduce(quaternary)
    return quaternary, binary
