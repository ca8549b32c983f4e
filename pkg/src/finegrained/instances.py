"""Problem instances shared by the reductions and the oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

Str = tuple[int, ...]


def _tup(s) -> Str:
    return tuple(int(a) for a in s)


@dataclass(frozen=True)
class DmInstance:
    """Text plus a dictionary of equal-length patterns."""

    text: Str
    patterns: tuple[Str, ...]
    sigma: int = 2

    def __post_init__(self):
        object.__setattr__(self, "text", _tup(self.text))
        object.__setattr__(self, "patterns", tuple(_tup(p) for p in self.patterns))
        if not self.text:
            raise ValueError("text must be nonempty")
        lengths = {len(p) for p in self.patterns}
        if len(lengths) > 1:
            raise ValueError("patterns must share one length")
        if 0 in lengths:
            raise ValueError("patterns must be nonempty")
        for s in (self.text, *self.patterns):
            if any(not 0 <= a < self.sigma for a in s):
                raise ValueError(f"symbol outside [0..{self.sigma})")

    @property
    def m(self) -> int:
        return len(self.patterns[0]) if self.patterns else 0

    @property
    def k(self) -> int:
        return len(self.patterns)


@dataclass(frozen=True)
class SnInstance:
    """Pairs P of (X, Y) with |X| = |Y| = m and pairs Q of (A, B) with |A| + |B| = m."""

    pairs_p: tuple[tuple[Str, Str], ...]
    pairs_q: tuple[tuple[Str, Str], ...]
    m: int
    sigma: int = 2

    def __post_init__(self):
        object.__setattr__(self, "pairs_p", tuple((_tup(x), _tup(y)) for x, y in self.pairs_p))
        object.__setattr__(self, "pairs_q", tuple((_tup(a), _tup(b)) for a, b in self.pairs_q))
        for x, y in self.pairs_p:
            if len(x) != self.m or len(y) != self.m:
                raise ValueError("every (X, Y) needs |X| = |Y| = m")
        for a, b in self.pairs_q:
            if len(a) + len(b) != self.m:
                raise ValueError("every (A, B) needs |A| + |B| = m")
        for pair in (*self.pairs_p, *self.pairs_q):
            for s in pair:
                if any(not 0 <= c < self.sigma for c in s):
                    raise ValueError(f"symbol outside [0..{self.sigma})")


@dataclass(frozen=True)
class RpsInstance:
    """Strings S[1..m] of common length and queries (b, e, Q) asking about S(b..e]."""

    strings: tuple[Str, ...]
    queries: tuple[tuple[int, int, Str], ...]
    length: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(_tup(s) for s in self.strings))
        object.__setattr__(self, "queries", tuple((int(b), int(e), _tup(q)) for b, e, q in self.queries))
        lengths = {len(s) for s in self.strings}
        if len(lengths) > 1:
            raise ValueError("strings must share one length")
        if self.length < 0:
            object.__setattr__(self, "length", lengths.pop() if lengths else 0)
        elif lengths and lengths != {self.length}:
            raise ValueError("declared length disagrees with the strings")
        m = len(self.strings)
        for b, e, q in self.queries:
            if not 0 <= b <= e <= m:
                raise ValueError(f"query range ({b}, {e}] outside [0..{m}]")
            if len(q) > self.length:
                raise ValueError("query longer than the strings")
