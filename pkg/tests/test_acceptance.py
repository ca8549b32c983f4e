"""End-to-end acceptance runs, one test per criterion, each printing a PASS/FAIL line."""

import json
import random
import time

from click.testing import CliRunner

from finegrained import harness
from finegrained.cli import main
from finegrained.core import (
    NON_OVERLAPPING,
    OVERLAPPING,
    lcf,
    lpf_arrays,
    lz_factorize,
    lz_prefix_sizes,
    lz_size,
    occurrences,
    suffix_structures,
    symbols,
)
from finegrained.dm_reductions import (
    evaluate,
    isa_alphabet_reduce,
    lcf_alphabet_reduce,
    lpf_alphabet_reduce,
    lz_alphabet_reduce,
    reduce_dm_to_isa,
    reduce_dm_to_lcf,
    reduce_dm_to_lpf,
    reduce_dm_to_lz,
    reduce_dm_to_rlbwt,
)
from finegrained.geometry import batch_insert, cci_difference, query_gadget, rps_gadget_strings, rps_to_cci, single_insert, sn_to_rps
from finegrained.instances import DmInstance, RpsInstance, SnInstance
from finegrained.inversions import CciInstance, cci_from_ci, ci_from_cci, colored_inversion_count, inversion_count
from finegrained.nesting import (
    build_sync_set,
    dm_to_sn_ternary,
    fully_periodic_occurrences,
    fully_periodic_witnesses,
    min_exponent,
    nonperiodic_occurrences,
    partially_periodic_occurrences,
    periodic_profile_pattern,
    r_sets,
    sn_binarize,
    sn_to_dm,
    verify_sync_set,
)
from finegrained.oracles import oracle_arrays, oracle_counts, oracle_dm, oracle_inversions, oracle_lcf, oracle_rps, oracle_sn

VARIANTS = (OVERLAPPING, NON_OVERLAPPING)


def record(capsys, number, name, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {name}: {detail}"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def dm_instance(seed, n, k, m, periodic_rich=False):
    return harness.generate("dm", n=n, k=k, m=m, seed=seed, periodic_rich=periodic_rich).instance()


def periodic_rich_text(rng, n, sigma=2):
    t = []
    while len(t) < n:
        if rng.random() < 0.6:
            period = rng.randint(1, 2)
            root = [rng.randrange(sigma) for _ in range(period)]
            t += [root[i % period] for i in range(rng.randint(5, 40))]
        else:
            t += [rng.randrange(sigma) for _ in range(rng.randint(1, 6))]
    return t[:n]


def test_criterion_01_figure_fidelity(capsys):
    start = time.perf_counter()
    t = symbols("bbabaababababaababa")
    ss = suffix_structures(t)
    word = lambda s: "".join("ab"[c] for c in s)
    checks = {
        "SA": ss.sa == [19, 14, 5, 17, 12, 3, 15, 10, 8, 6, 18, 13, 4, 16, 11, 2, 9, 7, 1],
        "BWT": word(ss.bwt) == "bbbbbbabbaaaaaabaaa",
        "z": lz_size(t, OVERLAPPING) == 7 and lz_size(t, NON_OVERLAPPING) == 7,
        "overlapping phrases": [word(p) for p in lz_factorize(t, OVERLAPPING).pieces(t)]
        == ["b", "b", "a", "ba", "aba", "bababa", "ababa"],
        "non-overlapping phrases": [word(p) for p in lz_factorize(t, NON_OVERLAPPING).pieces(t)]
        == ["b", "b", "a", "ba", "aba", "baba", "baababa"],
    }
    elapsed = time.perf_counter() - start
    failed = [k for k, v in checks.items() if not v]
    ok = not failed and elapsed < 1.0
    record(capsys, 1, "figure fidelity", ok, f"{len(checks) - len(failed)}/{len(checks)} checks, {elapsed:.3f} s (limit 1 s)")


def test_criterion_02_dm_to_lz(capsys):
    rng = random.Random(2)
    start = time.perf_counter()
    bad_gadget = bad_binary = yes = 0
    count = 1000
    for i in range(count):
        m = rng.randint(3, 12)
        inst = dm_instance(20_000 + i, rng.randint(8, 512), rng.randint(1, min(32, 2**m)), m)
        truth = oracle_dm(inst)
        yes += truth
        for variant in VARIANTS:
            diff = evaluate(reduce_dm_to_lz(inst, False, variant)).measured["difference"]
            bad_gadget += diff != (2 * inst.k if truth else 2 * inst.k + 1)
            bad_binary += evaluate(reduce_dm_to_lz(inst, True, variant)).answer != truth
    elapsed = time.perf_counter() - start
    ok = bad_gadget == bad_binary == 0 and elapsed < 60
    detail = (
        f"{count} instances ({yes} YES), gadget mismatches {bad_gadget}, "
        f"binary parity mismatches {bad_binary}, both variants, {elapsed:.1f} s (limit 60 s)"
    )
    record(capsys, 2, "dm to LZ identity", ok, detail)


def test_criterion_03_lz_alphabet_reduction(capsys):
    rng = random.Random(3)
    fig = symbols("0120122")
    s, delta = lz_alphabet_reduce(fig)
    fig_ok = lz_size(fig) == 5 and lz_size(s) - lz_size(s[:delta]) == 5
    bad = total = 0
    for sigma in (3, 4, 5, 8):
        for _ in range(500):
            t = [rng.randrange(sigma) for _ in range(rng.randint(1, 128))]
            ref = oracle_arrays(t)
            s, delta = lz_alphabet_reduce(t, sigma)
            for variant, want in zip(VARIANTS, (ref.z, ref.z_no)):
                full, part = lz_prefix_sizes(s, [len(s), delta], variant)
                bad += full - part != want
            total += 1
    ok = fig_ok and bad == 0
    record(capsys, 3, "LZ alphabet reduction", ok, f"figure z=5 {'ok' if fig_ok else 'wrong'}, {total} texts x 2 variants, mismatches {bad}")


def _special_dm(rng, mode):
    """Random, empty, all-occurring or none-occurring dictionaries."""
    n, m = rng.randint(4, 96), rng.randint(1, 8)
    t = [rng.randrange(2) for _ in range(n)]
    if mode == 1:
        return DmInstance(t, [])
    pats = set()
    k = rng.randint(1, 12)
    for _ in range(8 * k):
        if len(pats) == k:
            break
        if mode == 2 and n >= m:
            j = rng.randrange(n - m + 1)
            pats.add(tuple(t[j : j + m]))
        else:
            p = tuple(rng.randrange(2) for _ in range(m))
            if mode != 3 or not occurrences(p, t):
                pats.add(p)
    return DmInstance(t, sorted(pats))


def test_criterion_04_dm_to_rlbwt(capsys):
    rng = random.Random(4)
    bad = {False: 0, True: 0}
    modes = [0, 0, 0, 0]
    count = 600
    for i in range(count):
        mode = i % 4
        inst = _special_dm(rng, mode)
        modes[mode] += 1
        missing = sum(1 for p in inst.patterns if not occurrences(p, inst.text))
        for binary in (False, True):
            ev = evaluate(reduce_dm_to_rlbwt(inst, binary))
            factor = 2 if binary else 1
            bad[binary] += ev.measured["difference"] != factor * missing or ev.answer != oracle_dm(inst)
    ok = not any(bad.values())
    detail = (
        f"{count} instances, per mode random/k=0/all/none = {modes}, "
        f"decimal mismatches {bad[False]}, binary mismatches {bad[True]}"
    )
    record(capsys, 4, "dm to RLBWT differences", ok, detail)


def test_criterion_05_isa_lcf_lpf(capsys):
    rng = random.Random(5)
    count = 500
    bad = {"isa": 0, "lcf": 0, "lpf": 0, "isa-alpha": 0, "lcf-alpha": 0, "lpf-alpha": 0}
    for i in range(count):
        m = rng.randint(1, 10)
        inst = dm_instance(50_000 + i, rng.randint(8, 192), rng.randint(1, min(12, 2**m)), m)
        hits = [bool(occurrences(p, inst.text)) for p in inst.patterns]
        truth = oracle_dm(inst)
        for binary in (False, True):
            bad["isa"] += evaluate(reduce_dm_to_isa(inst, binary)).measured["per_pattern"] != hits
            bad["lcf"] += evaluate(reduce_dm_to_lcf(inst, binary)).answer != truth
            for variant in VARIANTS:
                values = evaluate(reduce_dm_to_lpf(inst, binary, variant)).measured["per_pattern"]
                bad["lpf"] += [v == inst.m for v in values] != hits
    for _ in range(count):
        sigma = rng.randint(3, 8)
        t = [rng.randrange(sigma) for _ in range(rng.randint(1, 48))]
        s, shift, stride = isa_alphabet_reduce(t, sigma)
        isa_t, isa_s = suffix_structures(t).isa, suffix_structures(s).isa
        bad["isa-alpha"] += any(isa_t[j] != isa_s[j * stride] - shift for j in range(len(t)))
        s, stride = lpf_alphabet_reduce(t, sigma)
        for small, big in zip(lpf_arrays(t), lpf_arrays(s)):
            bad["lpf-alpha"] += any(small[j] != big[j * stride] // stride for j in range(len(t)))
        u = [rng.randrange(sigma) for _ in range(rng.randint(1, 48))]
        a, alpha, beta = lcf_alphabet_reduce(t, sigma)
        b, _, _ = lcf_alphabet_reduce(u, sigma)
        want = oracle_lcf(t, u)
        bad["lcf-alpha"] += want > 0 and (lcf(a, b) - alpha) // beta != want
    ok = not any(bad.values())
    record(capsys, 5, "ISA, LCF, LPF predicates and alphabet reductions", ok, f"{count} instances/texts each, mismatches {bad}")


def test_criterion_06_sync_sets(capsys):
    rng = random.Random(6)
    bad, worst = 0, 0.0
    count = 1000
    for _ in range(count):
        n = rng.randint(2, 256)
        t = periodic_rich_text(rng, n) if rng.random() < 0.5 else [rng.randrange(rng.randint(2, 4)) for _ in range(n)]
        tau = rng.randint(1, min(8, n // 2))
        s = build_sync_set(t, tau)
        bad += not verify_sync_set(t, tau, s).ok
        worst = max(worst, len(s.positions) * tau / n)
    record(capsys, 6, "synchronizing sets", bad == 0, f"{count} (T, tau), violations {bad}, max |S|*tau/n = {worst:.2f} (informational, bound 4)")


def test_criterion_07_periodic_machinery(capsys):
    rng = random.Random(7)
    kinds = {"nonperiodic": 0, "partial": 0, "full": 0}
    bad = witness_bad = mono_bad = mono_checked = 0
    trials = 0
    while (min(kinds.values()) < 100 or sum(kinds.values()) < 500) and trials < 20_000:
        trials += 1
        tau = rng.randint(3, 6)
        t = periodic_rich_text(rng, rng.randint(6 * tau, 160)) + [2]
        m = rng.randint(3 * tau - 1, 3 * tau + 20)
        if len(t) <= m:
            continue
        if rng.random() < 0.7:
            j = rng.randrange(len(t) - m)
            p = tuple(t[j : j + m])
        else:
            p = tuple(rng.randrange(2) for _ in range(m))
        prof = periodic_profile_pattern(p, tau)
        truth = occurrences(p, t)
        rs = r_sets(t, tau)
        if not prof.is_periodic:
            kinds["nonperiodic"] += 1
            bad += nonperiodic_occurrences(p, t, build_sync_set(t, tau)) != truth
        elif prof.run_end <= m:
            kinds["partial"] += 1
            bad += partially_periodic_occurrences(p, t, rs) != truth
        else:
            kinds["full"] += 1
            bad += fully_periodic_occurrences(p, rs) != truth
            witness_bad += bool(truth) and not fully_periodic_witnesses(p, rs)
        for root in rs.roots():
            for head in range(len(root)):
                sizes = [len(rs.select(root, head, k)) for k in range(len(t) + 1)]
                for k in range(min_exponent(len(root), head, tau) + 1, len(t)):
                    mono_checked += 1
                    mono_bad += sizes[k] < sizes[k + 1]
    ok = bad == witness_bad == mono_bad == 0
    detail = (
        f"{sum(kinds.values())} instances {kinds}, occurrence mismatches {bad}, witness failures {witness_bad}, "
        f"monotonicity {mono_checked} checks / {mono_bad} failures"
    )
    record(capsys, 7, "periodic machinery", ok, detail)


def test_criterion_08_dm_sn_equivalence(capsys):
    rng = random.Random(8)
    paths = {"short": 0, "nonperiodic": 0, "periodic": 0}
    bad_forward = bad_back = 0
    count = 1000
    for i in range(count):
        tau = rng.choice([None, 1, 2, 3, 4, 5])
        m = rng.randint(1, 18)
        n = rng.randint(max(4, 3 * m), 160)
        inst = dm_instance(80_000 + i, n, rng.randint(0, min(8, 2**m)), m, periodic_rich=rng.random() < 0.7)
        ternary, report = dm_to_sn_ternary(inst, tau)
        if report.path == "short":
            paths["short"] += 1
        for kind in set(report.kinds):
            paths[kind] += 1
        sn = sn_binarize(ternary)
        truth = oracle_dm(inst)
        bad_forward += oracle_sn(ternary) != truth or oracle_sn(sn) != truth
    for i in range(count):
        m = rng.randint(1, 6)
        rs = lambda length: tuple(rng.randrange(2) for _ in range(length))
        pairs_p = [(rs(m), rs(m)) for _ in range(rng.randint(1, 10))]
        pairs_q = []
        for _ in range(rng.randint(1, 6)):
            cut = rng.randint(0, m)
            if rng.random() < 0.3:
                x, y = rng.choice(pairs_p)
                pairs_q.append((x[m - cut :], y[: m - cut]))
            else:
                pairs_q.append((rs(cut), rs(m - cut)))
        sn = SnInstance(pairs_p, pairs_q, m)
        quaternary, binary = sn_to_dm(sn)
        truth = oracle_sn(sn)
        bad_back += oracle_dm(quaternary) != truth or oracle_dm(binary) != truth
    ok = bad_forward == bad_back == 0 and all(paths.values())
    record(capsys, 8, "DM and SN equivalence", ok, f"{count} each way, paths {paths}, mismatches dm-sn {bad_forward}, sn-dm {bad_back}")


def _rand_bits(rng, length):
    return tuple(rng.randrange(2) for _ in range(length))


def test_criterion_09_sn_rps_cci_chain(capsys):
    rng = random.Random(9)
    count = 500
    bad = {"sn-rps": 0, "rps-cci": 0, "gadget": 0, "batch": 0}
    for _ in range(count):
        m = rng.randint(1, 6)
        pairs_p = [(_rand_bits(rng, m), _rand_bits(rng, m)) for _ in range(rng.randint(1, 10))]
        pairs_q = []
        for _ in range(rng.randint(1, 6)):
            cut = rng.randint(0, m)
            if rng.random() < 0.3:
                x, y = rng.choice(pairs_p)
                pairs_q.append((x[m - cut :], y[: m - cut]))
            else:
                pairs_q.append((_rand_bits(rng, cut), _rand_bits(rng, m - cut)))
        sn = SnInstance(pairs_p, pairs_q, m)
        bad["sn-rps"] += oracle_rps(sn_to_rps(sn))[0] != oracle_sn(sn)

        length = rng.randint(1, 8)
        strings = [_rand_bits(rng, length) for _ in range(rng.randint(0, 20))]
        queries = []
        for _ in range(rng.randint(1, 8)):
            b = rng.randint(0, len(strings))
            e = rng.randint(b, len(strings))
            if e > b and rng.random() < 0.5:
                q = strings[rng.randrange(b, e)][: rng.randint(0, length)]
            else:
                q = _rand_bits(rng, rng.randint(0, length))
            queries.append((b, e, q))
        rps = RpsInstance(strings, queries, length)
        _, counts = oracle_rps(rps)
        colors, a_add, a_sub = rps_to_cci(rps)
        diff = cci_difference(colors, a_add, a_sub)
        c2, s_add, s_sub = rps_gadget_strings(rps)
        string_diff = oracle_counts(CciInstance(c2, s_add)) - oracle_counts(CciInstance(c2, s_sub))
        bad["rps-cci"] += not (diff == string_diff == 2 * sum(counts)) or len(colors) != len(strings) + 2 * len(queries)

        ell = rng.randint(1, 6)
        arr = [_rand_bits(rng, ell) for _ in range(rng.randint(0, 12))]
        b = rng.randint(0, len(arr))
        e = rng.randint(b, len(arr))
        q = _rand_bits(rng, rng.randint(0, ell - 1))
        lift = lambda s: tuple(x + 1 for x in s)
        c, a_lh, a_hl = query_gadget([lift(s) for s in arr], b, e, lift(q), 0, 3)
        hits = sum(1 for t in range(b, e) if arr[t][: len(q)] == q)
        bad["gadget"] += oracle_counts(CciInstance(c, a_hl)) - oracle_counts(CciInstance(c, a_lh)) != 2 * hits

        vals = [rng.randrange(10) for _ in range(rng.randint(0, 15))]
        items = sorted(((rng.randint(1, len(vals) + 1), rng.randrange(10)) for _ in range(rng.randint(0, 6))), key=lambda it: it[0])
        separate = sum(oracle_counts(CciInstance(*single_insert(vals, p, x))) for p, x in items)
        bad["batch"] += separate != oracle_counts(CciInstance(*batch_insert(vals, items)))
    ok = not any(bad.values())
    record(capsys, 9, "SN to RPS to CCI chain", ok, f"{count} instances per check, mismatches {bad}")


def test_criterion_10_ci_cci(capsys):
    rng = random.Random(10)
    count = 1000
    bad = 0
    largest = 0
    for i in range(count):
        n = 2048 if i < 20 else rng.randint(0, 2048)
        largest = max(largest, n)
        values = [rng.randrange(rng.randint(1, 2 * n + 1)) for _ in range(n)]
        colors = [rng.randrange(2) for _ in range(n)]
        inst = CciInstance(colors, values)
        inv, cci = oracle_inversions(values), oracle_counts(inst)
        bad += not (inversion_count(values) == ci_from_cci(values) == inv)
        bad += not (colored_inversion_count(inst) == cci_from_ci(inst) == cci)
    record(capsys, 10, "CI and CCI equivalences", bad == 0, f"{count} arrays, n up to {largest}, mismatches {bad}")


def test_criterion_11_full_pipeline(capsys, tmp_path):
    rng = random.Random(11)
    count = 200
    bad = yes = 0
    for i in range(count):
        m = rng.randint(1, 10)
        f = harness.generate("dm", n=rng.randint(8, 256), k=rng.randint(1, min(16, 2**m)), m=m, seed=110_000 + i)
        reports = harness.pipeline("dm,sn,rps,cci,ci", f)
        truth = oracle_dm(f.instance())
        yes += truth
        bad += not all(r.passed for r in reports) or reports[-1].decoded != truth
    runner = CliRunner()
    path = tmp_path / "inst.json"
    runner.invoke(main, ["gen", "dm", "--n", "64", "--k", "4", "--m", "5", "--seed", "7", "-o", str(path)])
    good_exit = runner.invoke(main, ["pipeline", "--chain", "dm,sn,rps,cci,ci", str(path)]).exit_code
    out = tmp_path / "lz.json"
    runner.invoke(main, ["reduce", "dm-lz", str(path), "-o", str(out)])
    d = json.loads(out.read_text())
    d["payload"]["texts"][0][0] ^= 1
    out.write_text(json.dumps(d))
    bad_exit = runner.invoke(main, ["verify", str(out)]).exit_code
    ok = bad == 0 and good_exit == 0 and bad_exit == 1
    detail = f"{count} instances ({yes} YES), mismatches {bad}, CLI exit codes pass={good_exit} corrupted={bad_exit}"
    record(capsys, 11, "full pipeline dm-sn-rps-cci-ci", ok, detail)
