"""Dictionary Matching reduced to LZ77 size, BWT runs, ISA, LCF and LPF queries.

Each reduction returns a ReductionOutput carrying the constructed texts and
a decode tag with its parameters. `evaluate` measures the quantities the
tag names on the constructed texts and turns them into a YES/NO answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    OVERLAPPING,
    bin_k,
    ceil_log2,
    lcf,
    lpf_arrays,
    lz_prefix_sizes,
    lz_size,
    pad,
    rlbwt_size,
    substitute,
    suffix_structures,
)
from .instances import DmInstance
from .inversions import rank_compress

LZ_GADGET = "lz-gadget"
LZ_PARITY = "lz-parity"
RLBWT_DIFF = "rlbwt-diff"
ISA_GAP = "isa-gap"
LCF_FLOOR = "lcf-floor"
LPF_FLOOR = "lpf-floor"


@dataclass
class ReductionOutput:
    edge: str
    texts: list[list[int]]
    decode: str
    params: dict = field(default_factory=dict)


@dataclass
class Evaluation:
    answer: bool
    measured: dict


def _concat(parts) -> list[int]:
    out: list[int] = []
    for p in parts:
        out.extend(p)
    return out


# LZ77


def lz_gadget(inst: DmInstance) -> tuple[list[int], int]:
    """The string S = S1 S2 S3 and delta = |S1 S2|."""
    t, pats, m, k = list(inst.text), [list(p) for p in inst.patterns], inst.m, inst.k
    n = len(t)
    primed = [substitute(substitute(p, 0, [2]), 1, [3]) for p in pats]
    nxt = pats[1:] + [[0] * m]
    s1 = t + [5]
    s2 = _concat(
        p[1:] + [4] + p[:-1] + [4] + [p[-1]] + q + [4] + q + [after[0]] + [4]
        for p, q, after in zip(pats, primed, nxt)
    ) + [6]
    s3 = _concat(p + q for p, q in zip(pats, primed)) + [0]
    s = s1 + s2 + s3
    delta = len(s1) + len(s2)
    assert delta == n + k * (4 * m + 4) + 2
    assert len(s) == n + k * (6 * m + 4) + 3
    return s, delta


def lz_alphabet_reduce(t: Sequence[int], sigma: int | None = None) -> tuple[list[int], int]:
    """Binary s and delta with z(s) - z(s[1..delta]) = z(t), in both LZ variants."""
    t = list(t)
    if sigma is None:
        sigma = max(t, default=0) + 1
    if sigma > len(t):
        t = rank_compress(t)
        sigma = max(t, default=0) + 1
    if sigma <= 2:
        return t, 0
    k = ceil_log2(sigma + 1)
    table = [[1] * (2 * k - 1) + [0] + pad(bin_k(k, a)) * 2 for a in range(sigma + 1)]
    head = _concat(table[a] + table[sigma] for a in range(sigma)) + [1]
    assert len(head) == 12 * k * sigma + 1
    return head + _concat(table[a] for a in t), len(head)


def reduce_dm_to_lz(inst: DmInstance, binary: bool = False, variant: str = OVERLAPPING) -> ReductionOutput:
    if inst.sigma != 2:
        raise ValueError("dm→LZ expects a binary instance")
    if inst.k and inst.m < 3:
        raise ValueError("dm→LZ requires pattern length m >= 3")
    if len(set(inst.patterns)) != inst.k:
        raise ValueError("dm→LZ requires distinct patterns")
    s, delta = lz_gadget(inst)
    params = {"k": inst.k, "variant": variant, "delta": delta}
    if not binary:
        return ReductionOutput("dm-lz", [s], LZ_GADGET, params)
    full, d1 = lz_alphabet_reduce(s, 7)
    part, d2 = lz_alphabet_reduce(s[:delta], 7)
    texts = [full, full[:d1], part, part[:d2]]
    return ReductionOutput("dm-lz-binary", texts, LZ_PARITY, params)


# BWT runs


def _tilde_decimal(s: Sequence[int]) -> list[int]:
    out: list[int] = []
    for i, a in enumerate(s):
        if i:
            out.append(4)
        out.append(a)
    return out


def _tilde_binary(s: Sequence[int]) -> list[int]:
    return _concat([a, 1, 0] for a in s)


def reduce_dm_to_rlbwt(inst: DmInstance, binary: bool = False) -> ReductionOutput:
    if inst.sigma != 2:
        raise ValueError("dm→RLBWT expects a binary instance")
    n, k, m = len(inst.text), inst.k, inst.m
    if not binary:
        head = [4] + _tilde_decimal(inst.text) + [4]
        blocks1, blocks2 = [], []
        for p in inst.patterns:
            w = _tilde_decimal(p)
            blocks1.append([4] + w + [2] + [8] + w + [5] + [4] + w + [6] + [4] + w + [7] + [9] + w + [3])
            blocks2.append([4] + w + [2] + [8] + w + [6] + [4] + w + [5] + [4] + w + [7] + [9] + w + [3])
        s1, s2 = head + _concat(blocks1), head + _concat(blocks2)
        assert len(s1) == len(s2) == 2 * n + 1 + 5 * k * (2 * m + 1)
        return ReductionOutput("dm-rlbwt", [s1, s2], RLBWT_DIFF, {"k": k, "factor": 1})
    head = [1, 0] + _tilde_binary(inst.text)
    tails1 = ([1, 0], [0] * 7 + [1] * 4), ([0, 0], [0] * 6 + [1] * 5)
    tails2 = ([1, 0], [0] * 6 + [1] * 5), ([0, 0], [0] * 7 + [1] * 4)
    shared = (
        ([0, 0], [1] * 3 + [0] * 3 + [1] * 5),
        ([0, 0], [1] * 4 + [0] * 3 + [1] * 4),
        ([0, 0], [0] * 8 + [1] * 3),
    )
    blocks1, blocks2 = [], []
    for p in inst.patterns:
        w = _tilde_binary(p)
        blocks1.append(_concat(a + w + b for a, b in tails1 + shared))
        blocks2.append(_concat(a + w + b for a, b in tails2 + shared))
    s1, s2 = head + _concat(blocks1), head + _concat(blocks2)
    assert len(s1) == len(s2) == 3 * n + 5 * k * (3 * m + 13) + 2
    return ReductionOutput("dm-rlbwt-binary", [s1, s2], RLBWT_DIFF, {"k": k, "factor": 2})


# ISA


def isa_alphabet_reduce(t: Sequence[int], sigma: int) -> tuple[list[int], int, int]:
    """Binary s, shift and stride with ISA_t[j] = ISA_s[(j-1)*stride + 1] - shift."""
    t = list(t)
    if sigma <= 2:
        return t, 0, 1
    k = ceil_log2(sigma)
    s = _concat([1] * (k + 1) + [0] + bin_k(k, a) + [0] for a in t)
    return s, len(s) - len(t), 2 * k + 3


def reduce_dm_to_isa(inst: DmInstance, binary: bool = False) -> ReductionOutput:
    if inst.sigma != 2:
        raise ValueError("dm→ISA expects a binary instance")
    n, k, m = len(inst.text), inst.k, inst.m
    f = [a + 1 for a in inst.text]
    s = f + [3] + _concat([a + 1 for a in p] + [0] + [a + 1 for a in p] + [4] for p in inst.patterns)
    assert len(s) == n + 2 * k * (m + 1) + 1
    shift, stride = n + 1, 2 * (m + 1)
    params = {"k": k, "m": m, "alpha": shift, "beta": stride, "gamma": m + 1}
    if not binary:
        return ReductionOutput("dm-isa", [s], ISA_GAP, params)
    b, _, d2 = isa_alphabet_reduce(s, 5)
    params.update(alpha=shift * d2, beta=stride * d2, gamma=(m + 1) * d2)
    return ReductionOutput("dm-isa-binary", [b], ISA_GAP, params)


# LCF


def lcf_alphabet_reduce(s: Sequence[int], sigma: int) -> tuple[list[int], int, int]:
    """Binary s' with LCF(s1, s2) = floor((LCF(s1', s2') - alpha) / beta)."""
    sigma = max(3, sigma)
    k = ceil_log2(sigma)
    sep = [1] * (2 * k - 1) + [0]
    return sep + _concat(pad(bin_k(k, a)) + sep for a in s), 2 * k, 4 * k


def reduce_dm_to_lcf(inst: DmInstance, binary: bool = False) -> ReductionOutput:
    if inst.sigma != 2:
        raise ValueError("dm→LCF expects a binary instance")
    n, k, m = len(inst.text), inst.k, inst.m
    s1 = list(inst.text)
    s2 = _concat(list(p) + [2] for p in inst.patterns)
    assert len(s1) + len(s2) == n + k * (m + 1)
    if not binary:
        return ReductionOutput("dm-lcf", [s1, s2], LCF_FLOOR, {"m": m, "alpha": 0, "beta": 1})
    b1, alpha, beta = lcf_alphabet_reduce(s1, 3)
    b2, _, _ = lcf_alphabet_reduce(s2, 3)
    return ReductionOutput("dm-lcf-binary", [b1, b2], LCF_FLOOR, {"m": m, "alpha": alpha, "beta": beta})


# LPF


def lpf_alphabet_reduce(t: Sequence[int], sigma: int) -> tuple[list[int], int]:
    """Binary t' and stride with LPF_t[i] = floor(LPF_t'[(i-1)*stride + 1] / stride), likewise LPnF."""
    sigma = max(3, sigma)
    k = ceil_log2(sigma)
    sep = [1] * (2 * k - 1) + [0]
    return _concat(sep + pad(bin_k(k, a)) for a in t), 4 * k


def reduce_dm_to_lpf(inst: DmInstance, binary: bool = False, variant: str = OVERLAPPING) -> ReductionOutput:
    if inst.sigma != 2:
        raise ValueError("dm→LPF expects a binary instance")
    n, k, m = len(inst.text), inst.k, inst.m
    t = list(inst.text) + [2] + _concat(list(p) + [3] for p in inst.patterns)
    assert len(t) == n + k * (m + 1) + 1
    shift, stride = n + 1, m + 1
    params = {"k": k, "m": m, "variant": variant, "alpha": shift, "beta": stride, "gamma": 1}
    if not binary:
        return ReductionOutput("dm-lpf", [t], LPF_FLOOR, params)
    b, d2 = lpf_alphabet_reduce(t, 4)
    params.update(alpha=shift * d2, beta=stride * d2, gamma=d2)
    return ReductionOutput("dm-lpf-binary", [b], LPF_FLOOR, params)


REDUCTIONS = {
    "lz": reduce_dm_to_lz,
    "rlbwt": reduce_dm_to_rlbwt,
    "isa": reduce_dm_to_isa,
    "lcf": reduce_dm_to_lcf,
    "lpf": reduce_dm_to_lpf,
}


def _lz_sizes(texts: list[list[int]], variant: str) -> list[int]:
    """LZ sizes, sharing one factorization among texts that prefix the longest one."""
    base = max(texts, key=len)
    shared = [i for i, t in enumerate(texts) if base[: len(t)] == list(t)]
    sizes = dict(zip(shared, lz_prefix_sizes(base, [len(texts[i]) for i in shared], variant)))
    return [sizes[i] if i in sizes else lz_size(t, variant) for i, t in enumerate(texts)]


def evaluate(out: ReductionOutput) -> Evaluation:
    """Measure the decode quantities on the constructed texts and derive the answer."""
    p = out.params
    if out.decode == LZ_GADGET:
        full, part = lz_prefix_sizes(out.texts[0], [len(out.texts[0]), p["delta"]], p["variant"])
        diff = full - part
        if diff not in (2 * p["k"], 2 * p["k"] + 1):
            raise AssertionError(f"LZ difference {diff} is neither 2k nor 2k+1")
        return Evaluation(diff == 2 * p["k"], {"z_full": full, "z_prefix": part, "difference": diff})
    if out.decode == LZ_PARITY:
        x = [z % 2 for z in _lz_sizes(out.texts, p["variant"])]
        return Evaluation(((x[0] - x[1]) - (x[2] - x[3])) % 2 == 0, {"parities": x})
    if out.decode == RLBWT_DIFF:
        r1, r2 = rlbwt_size(out.texts[0]), rlbwt_size(out.texts[1])
        diff = r2 - r1
        return Evaluation(diff < p["factor"] * p["k"], {"r1": r1, "r2": r2, "difference": diff})
    if out.decode == ISA_GAP:
        isa = suffix_structures(out.texts[0]).isa
        hits = []
        for i in range(1, p["k"] + 1):
            base = p["alpha"] + (i - 1) * p["beta"]
            hits.append(isa[base] + 1 < isa[base + p["gamma"]])
        return Evaluation(any(hits), {"per_pattern": hits})
    if out.decode == LCF_FLOOR:
        value = lcf(out.texts[0], out.texts[1])
        decoded = (value - p["alpha"]) // p["beta"]
        return Evaluation(decoded == p["m"], {"lcf": value, "decoded": decoded})
    if out.decode == LPF_FLOOR:
        lpf, lpnf = lpf_arrays(out.texts[0])
        arr = lpf if p["variant"] == OVERLAPPING else lpnf
        values = []
        for i in range(1, p["k"] + 1):
            values.append(arr[p["alpha"] + (i - 1) * p["beta"]] // p["gamma"])
        return Evaluation(any(v == p["m"] for v in values), {"per_pattern": values})
    raise ValueError(f"unknown decode tag {out.decode!r}")
