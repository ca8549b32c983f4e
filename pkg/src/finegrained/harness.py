"""Instance generation, serialization, verification and reduction chains."""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import dm_reductions as dmr
from . import geometry, nesting
from .core import LZ_VARIANTS, OVERLAPPING, occurrences
from .dm_reductions import ReductionOutput
from .instances import DmInstance, RpsInstance, SnInstance
from .inversions import CciInstance, colored_inversion_count, duplicate_instance, inversion_count, split_by_color
from .oracles import oracle_counts, oracle_dm, oracle_inversions, oracle_rps, oracle_sn

FORMAT = "finegrained-instance"
RNG_NAME = "python random.Random (MT19937)"
KINDS = ("dm", "sn", "rps", "cci", "ci", "text")
TEXT_EDGES = ("lz", "rlbwt", "isa", "lcf", "lpf")
EDGES = tuple(f"dm-{x}" for x in (*TEXT_EDGES, "sn")) + ("sn-dm", "sn-rps", "rps-cci", "cci-ci", "ci-cci")


@dataclass
class InstanceFile:
    kind: str
    sigma: int
    payload: dict
    generator: dict | None = None
    reduction: dict | None = None
    source: dict | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        self.instance()

    def instance(self):
        """The typed instance; constructing it checks the kind's invariants."""
        p = self.payload
        if self.kind == "dm":
            return DmInstance(p["text"], p["patterns"], self.sigma)
        if self.kind == "sn":
            return SnInstance([tuple(xy) for xy in p["pairs_p"]], [tuple(ab) for ab in p["pairs_q"]], p["m"], self.sigma)
        if self.kind == "rps":
            return RpsInstance(p["strings"], [tuple(q) for q in p["queries"]], p["length"])
        if self.kind == "cci":
            return [(term["weight"], CciInstance(term["colors"], term["values"])) for term in p["terms"]]
        if self.kind == "ci":
            return [(term["weight"], list(term["values"])) for term in p["terms"]]
        texts = p["texts"]
        if any(a < 0 or a >= self.sigma for t in texts for a in t):
            raise ValueError(f"symbol outside [0..{self.sigma})")
        return ReductionOutput(self.reduction["edge"] if self.reduction else "text", texts, p.get("decode", ""), p.get("params", {}))

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "kind": self.kind,
            "sigma": self.sigma,
            "payload": self.payload,
            "generator": self.generator,
            "reduction": self.reduction,
            "source": self.source,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    def head(self) -> dict:
        """This file without its own source, for embedding as a source."""
        d = self.to_dict()
        d["source"] = None
        return d


def from_dict(d: dict) -> InstanceFile:
    if d.get("format") != FORMAT:
        raise ValueError("not an instance file")
    return InstanceFile(d["kind"], d["sigma"], d["payload"], d.get("generator"), d.get("reduction"), d.get("source"))


def loads(s: str) -> InstanceFile:
    return from_dict(json.loads(s))


def load(path) -> InstanceFile:
    return loads(Path(path).read_text(encoding="utf-8"))


# payload conversions


def dm_file(inst: DmInstance, **extra) -> InstanceFile:
    payload = {"text": list(inst.text), "patterns": [list(p) for p in inst.patterns]}
    return InstanceFile("dm", inst.sigma, payload, **extra)


def sn_file(inst: SnInstance, **extra) -> InstanceFile:
    payload = {
        "m": inst.m,
        "pairs_p": [[list(x), list(y)] for x, y in inst.pairs_p],
        "pairs_q": [[list(a), list(b)] for a, b in inst.pairs_q],
    }
    return InstanceFile("sn", inst.sigma, payload, **extra)


def rps_file(inst: RpsInstance, **extra) -> InstanceFile:
    payload = {
        "length": inst.length,
        "strings": [list(s) for s in inst.strings],
        "queries": [[b, e, list(q)] for b, e, q in inst.queries],
    }
    return InstanceFile("rps", 2, payload, **extra)


def cci_file(terms: list[tuple[float, list[int], list[int]]], **extra) -> InstanceFile:
    sigma = max((max(v, default=0) for _, _, v in terms), default=0) + 1
    payload = {"terms": [{"weight": w, "colors": list(c), "values": list(v)} for w, c, v in terms]}
    return InstanceFile("cci", sigma, payload, **extra)


def ci_file(terms: list[tuple[float, list[int]]], **extra) -> InstanceFile:
    sigma = max((max(v, default=0) for _, v in terms), default=0) + 1
    payload = {"terms": [{"weight": w, "values": list(v)} for w, v in terms]}
    return InstanceFile("ci", sigma, payload, **extra)


def text_file(out: ReductionOutput, **extra) -> InstanceFile:
    sigma = max((max(t, default=0) for t in out.texts), default=0) + 1
    payload = {"texts": [list(t) for t in out.texts], "decode": out.decode, "params": out.params}
    return InstanceFile("text", max(2, sigma), payload, **extra)


# generators


def _random_string(rng: random.Random, n: int, sigma: int) -> list[int]:
    return [rng.randrange(sigma) for _ in range(n)]


def _periodic_text(rng: random.Random, n: int, sigma: int, run: int) -> list[int]:
    """Text whose first fragment is a run of length >= run, followed by a mix of runs and noise."""
    if n < run:
        raise ValueError(f"periodic-rich text of length {n} cannot hold a run of length {run}")
    t: list[int] = []
    while len(t) < n:
        if not t or rng.random() < 0.6:
            period = rng.randint(1, 3)
            root = _random_string(rng, period, sigma)
            length = rng.randint(run, 2 * run) if not t else rng.randint(max(2, run // 2), 2 * run)
            t += [root[i % period] for i in range(length)]
        else:
            t += _random_string(rng, rng.randint(1, 8), sigma)
    return t[:n]


def _text(rng, n, sigma, periodic_rich, run) -> list[int]:
    return _periodic_text(rng, n, sigma, run) if periodic_rich else _random_string(rng, n, sigma)


def _distinct_patterns(rng: random.Random, text: list[int], k: int, m: int, sigma: int) -> list[list[int]]:
    space = sigma**m
    if k > space:
        raise ValueError(f"cannot draw {k} distinct patterns: only {space} strings of length {m} exist")
    chosen: dict[tuple, None] = {}
    if k and len(text) >= m and rng.random() < 0.5:
        j = rng.randrange(len(text) - m + 1)
        chosen[tuple(text[j : j + m])] = None
    if 2 * k > space:
        for code in rng.sample(range(space), space):
            if len(chosen) == k:
                break
            chosen.setdefault(tuple((code // sigma**i) % sigma for i in range(m)), None)
    while len(chosen) < k:
        chosen.setdefault(tuple(_random_string(rng, m, sigma)), None)
    return [list(p) for p in chosen]


def generate(kind: str, n: int = 32, k: int = 4, m: int = 4, sigma: int = 2, seed: int = 0, periodic_rich: bool = False) -> InstanceFile:
    """A seeded random instance; the same arguments always give the same file."""
    rng = random.Random(seed)
    params = {"n": n, "k": k, "m": m, "sigma": sigma, "periodic_rich": periodic_rich}
    gen = {"rng": RNG_NAME, "seed": seed, "params": params}
    if kind == "dm":
        text = _text(rng, n, sigma, periodic_rich, 3 * m)
        return dm_file(DmInstance(text, _distinct_patterns(rng, text, k, m, sigma), sigma), generator=gen)
    if kind == "text":
        out = ReductionOutput("text", [_text(rng, n, sigma, periodic_rich, 3 * m)], "")
        return text_file(out, generator=gen)
    if kind == "sn":
        pairs_p = [(_random_string(rng, m, sigma), _random_string(rng, m, sigma)) for _ in range(n)]
        pairs_q = []
        for i in range(k):
            cut = rng.randint(0, m)
            if i == 0 and pairs_p and rng.random() < 0.5:
                x, y = rng.choice(pairs_p)
                pairs_q.append((x[m - cut :], y[: m - cut]))
            else:
                pairs_q.append((_random_string(rng, cut, sigma), _random_string(rng, m - cut, sigma)))
        return sn_file(SnInstance(pairs_p, pairs_q, m, sigma), generator=gen)
    if kind == "rps":
        strings = [_random_string(rng, m, 2) for _ in range(n)]
        queries = []
        for _ in range(k):
            b = rng.randint(0, n)
            e = rng.randint(b, n)
            length = rng.randint(0, m)
            if e > b and rng.random() < 0.5:
                q = strings[rng.randrange(b, e)][:length]
            else:
                q = _random_string(rng, length, 2)
            queries.append((b, e, q))
        return rps_file(RpsInstance(strings, queries, m), generator=gen)
    if kind in ("cci", "ci"):
        values = _random_string(rng, n, max(1, sigma))
        colors = _random_string(rng, n, 2)
        if kind == "cci":
            return cci_file([(1, colors, values)], generator=gen)
        return ci_file([(1, values)], generator=gen)
    raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


# reductions between files


def normalize_edge(edge: str) -> str:
    name = edge.replace("→", "-").replace("->", "-").replace(",", "-").strip().lower()
    if name not in EDGES:
        raise ValueError(f"unknown edge {edge!r}; valid edges: {', '.join(EDGES)}")
    return name


def reduce(edge: str, f: InstanceFile, binary: bool = False, variant: str = OVERLAPPING, tau: int | None = None) -> InstanceFile:
    """Apply one reduction edge; the output records its options and its source."""
    edge = normalize_edge(edge)
    src, dst = edge.split("-")
    if f.kind != src:
        raise ValueError(f"edge {edge} expects a {src} instance, got {f.kind}")
    if variant not in LZ_VARIANTS:
        raise ValueError(f"unknown LZ variant {variant!r}")
    options = {"binary": binary, "variant": variant, "tau": tau}
    extra = {"reduction": {"edge": edge, "options": options}, "source": f.head()}
    inst = f.instance()
    if src == "dm" and dst in TEXT_EDGES:
        fn = dmr.REDUCTIONS[dst]
        out = fn(inst, binary, variant) if dst in ("lz", "lpf") else fn(inst, binary)
        return text_file(out, **extra)
    if edge == "dm-sn":
        return sn_file(nesting.dm_to_sn(inst, tau), **extra)
    if edge == "sn-dm":
        quaternary, bin_inst = nesting.sn_to_dm(inst)
        return dm_file(bin_inst if binary else quaternary, **extra)
    if edge == "sn-rps":
        return rps_file(geometry.sn_to_rps(inst), **extra)
    if edge == "rps-cci":
        colors, a_add, a_sub = geometry.rps_to_cci(inst)
        return cci_file([(1, colors, a_add), (-1, colors, a_sub)], **extra)
    if edge == "cci-ci":
        terms = []
        for w, cci in inst:
            zeros, ones = split_by_color(cci)
            terms += [(w, list(cci.values)), (-w, zeros), (-w, ones)]
        return ci_file(terms, **extra)
    # ci-cci: each inversion count is half the colored count of the doubled array
    terms = []
    for w, values in inst:
        dup = duplicate_instance(values)
        terms.append((w / 2, dup.colors, dup.values))
    return cci_file(terms, **extra)


# answers


def cci_total(terms) -> float:
    return sum(w * colored_inversion_count(c) for w, c in terms)


def ci_total(terms) -> float:
    return sum(w * inversion_count(v) for w, v in terms)


def decide(f: InstanceFile) -> bool:
    """The YES/NO reading of a file computed with the library routines."""
    inst = f.instance()
    if f.kind == "dm":
        return any(occurrences(p, inst.text) for p in inst.patterns)
    if f.kind == "sn":
        return decide(rps_file(geometry.sn_to_rps(inst)))
    if f.kind == "rps":
        return any(
            any(inst.strings[t - 1][: len(q)] == q for t in range(b + 1, e + 1)) for b, e, q in inst.queries
        )
    if f.kind == "cci":
        return cci_total(inst) > 0
    if f.kind == "ci":
        return ci_total(inst) > 0
    return dmr.evaluate(inst).answer


def oracle_answer(f: InstanceFile) -> bool:
    """The YES/NO reading of a file from brute force, where a brute force exists."""
    inst = f.instance()
    if f.kind == "dm":
        return oracle_dm(inst)
    if f.kind == "sn":
        return oracle_sn(inst)
    if f.kind == "rps":
        return oracle_rps(inst)[0]
    if f.kind == "cci":
        return sum(w * oracle_counts(c) for w, c in inst) > 0
    if f.kind == "ci":
        return sum(w * oracle_inversions(v) for w, v in inst) > 0
    raise ValueError("a bare text has no decision problem")


# verification


@dataclass
class VerificationReport:
    reduction: str
    summary: dict
    measured: dict
    decoded: Any
    oracle: Any
    passed: bool
    detail: str = ""
    timings: dict = field(default_factory=dict)

    def to_dict(self, timings: bool = True) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("timings")
        return d

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.reduction}: decoded={self.decoded} oracle={self.oracle}{extra}"


def _summary(f: InstanceFile) -> dict:
    p = f.payload
    if f.kind == "dm":
        return {"kind": "dm", "n": len(p["text"]), "k": len(p["patterns"]), "m": len(p["patterns"][0]) if p["patterns"] else 0}
    if f.kind == "sn":
        return {"kind": "sn", "p": len(p["pairs_p"]), "q": len(p["pairs_q"]), "m": p["m"]}
    if f.kind == "rps":
        return {"kind": "rps", "strings": len(p["strings"]), "queries": len(p["queries"]), "length": p["length"]}
    if f.kind in ("cci", "ci"):
        return {"kind": f.kind, "terms": len(p["terms"]), "sizes": [len(t["values"]) for t in p["terms"]]}
    return {"kind": "text", "lengths": [len(t) for t in p["texts"]]}


def _dm_text_checks(src: DmInstance, out: ReductionOutput) -> tuple[dict, bool, str]:
    """Per-edge identities beyond the bare answer."""
    hits = [bool(occurrences(p, src.text)) for p in src.patterns]
    ev = dmr.evaluate(out)
    measured = dict(ev.measured)
    ok, detail = True, ""
    if out.decode == dmr.LZ_GADGET:
        expected = 2 * src.k + (0 if any(hits) else 1)
        measured.update(expected_difference=expected)
        ok = measured["difference"] == expected
        detail = f"z difference {measured['difference']}, expected {expected}"
    elif out.decode == dmr.RLBWT_DIFF:
        expected = out.params["factor"] * hits.count(False)
        measured.update(expected_difference=expected)
        ok = measured["difference"] == expected
        detail = f"r difference {measured['difference']}, expected {expected}"
    elif out.decode == dmr.ISA_GAP:
        ok = measured["per_pattern"] == hits
    elif out.decode == dmr.LPF_FLOOR:
        ok = [v == src.m for v in measured["per_pattern"]] == hits
    if not ok and not detail:
        detail = "per-pattern values disagree with occurrences"
    return measured, ok, detail


def verify_hop(f: InstanceFile) -> VerificationReport:
    """Check a reduction output against a fresh recomputation and the oracle of its source."""
    if not f.reduction or not f.source:
        raise ValueError("file is not a reduction output; use verify_edges on source instances")
    edge, opts = f.reduction["edge"], f.reduction["options"]
    src = from_dict(f.source)
    start = time.perf_counter()
    fresh = reduce(edge, src, **opts)
    detail = ""
    intact = fresh.payload == f.payload
    if not intact:
        detail = "stored output differs from a fresh reduction"
    measured: dict = {}
    ok = True
    if f.kind == "text":
        m, ok, d = _dm_text_checks(src.instance(), f.instance())
        measured.update(m)
        if not ok:
            detail = "; ".join(x for x in (detail, d) if x)
    elif edge == "rps-cci":
        _, counts = oracle_rps(src.instance())
        total = cci_total(f.instance())
        measured.update(cci_difference=total, expected=2 * sum(counts), counts=counts)
        ok = total == 2 * sum(counts)
        if not ok:
            detail = detail or f"CCI difference {total}, expected {2 * sum(counts)}"
    elif edge in ("cci-ci", "ci-cci"):
        got = ci_total(f.instance()) if f.kind == "ci" else cci_total(f.instance())
        inst = src.instance()
        want = (
            sum(w * oracle_counts(c) for w, c in inst) if src.kind == "cci" else sum(w * oracle_inversions(v) for w, v in inst)
        )
        measured.update(total=got, oracle_total=want)
        ok = got == want
        if not ok:
            detail = detail or f"total {got}, oracle {want}"
    elif edge == "sn-dm":
        quaternary, bin_inst = nesting.sn_to_dm(src.instance())
        measured.update(quaternary=oracle_dm(quaternary), binary=oracle_dm(bin_inst))
        ok = measured["quaternary"] == measured["binary"]
    decoded = decide(f)
    oracle = oracle_answer(src)
    if f.kind in ("cci", "ci") and src.kind in ("cci", "ci"):
        decoded, oracle = measured["total"], measured["oracle_total"]
    passed = intact and ok and decoded == oracle
    if not passed and not detail:
        detail = "decoded answer disagrees with the oracle"
    timings = {"seconds": round(time.perf_counter() - start, 6)}
    return VerificationReport(edge, _summary(src), measured, decoded, oracle, passed, detail, timings)


def edges_from(kind: str) -> list[str]:
    return [e for e in EDGES if e.split("-")[0] == kind]


def verify(f: InstanceFile, **options) -> list[VerificationReport]:
    """Verify one hop for a reduction output, or every outgoing edge for a source instance."""
    if f.reduction:
        return [verify_hop(f)]
    reports = []
    for edge in edges_from(f.kind):
        try:
            reports.append(verify_hop(reduce(edge, f, **options)))
        except ValueError as err:
            reports.append(VerificationReport(edge, _summary(f), {}, None, None, False, f"not applicable: {err}"))
    return reports


def parse_chain(chain: str | list[str]) -> list[str]:
    kinds = chain if isinstance(chain, list) else chain.replace("→", ",").replace("->", ",").split(",")
    kinds = [k.strip() for k in kinds if k.strip()]
    if len(kinds) < 2:
        raise ValueError("a chain needs at least two kinds")
    return [normalize_edge(f"{a}-{b}") for a, b in zip(kinds, kinds[1:])]


def pipeline(chain: str | list[str], f: InstanceFile, **options) -> list[VerificationReport]:
    """Thread f through the chain, verifying every hop and then the end-to-end answer."""
    edges = parse_chain(chain)
    reports, current = [], f
    start = time.perf_counter()
    for edge in edges:
        current = reduce(edge, current, **options)
        reports.append(verify_hop(current))
    end_to_end = decide(current) if current.kind != "text" else dmr.evaluate(current.instance()).answer
    oracle = oracle_answer(f)
    name = "-".join([edges[0].split("-")[0]] + [e.split("-")[1] for e in edges])
    timings = {"seconds": round(time.perf_counter() - start, 6)}
    reports.append(
        VerificationReport(name, _summary(f), {"hops": len(edges)}, end_to_end, oracle, end_to_end == oracle, timings=timings)
    )
    return reports
