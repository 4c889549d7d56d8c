"""Acceptance criteria, one test each.

Every test records a single ``ACCEPTANCE k: PASS|FAIL ...`` line in
``RESULTS`` (printed in the terminal summary and on stdout) before asserting.
"""

import hashlib
import random
import time

import numpy as np

from independent import erdos_renyi, max_clique_brute
from nbcws.cli import main
from nbcws.clique import BitGraph, Budget, build_clique_graph, max_clique, search
from nbcws.corpus import is_prime, ring_spec, spec_stream
from nbcws.cws import check_code, classical_rep, classical_rep_plus
from nbcws.fileio import data_path
from nbcws.oracle import kl_check, stabilized_state
from nbcws.pauli import enumerate_errors, parse_literal, weight
from nbcws.stabilizer import StabilizerSpec, canonicalize, syndrome_lattice, validate, word_operator_for
from nbcws.structure import gcd_pattern_scan, group_extension, scalar_closure, worked_examples

RESULTS: dict[int, str] = {}
FX = worked_examples()


def record(k: int, checks: dict[str, bool], detail: str = "") -> None:
    ok = all(checks.values())
    failed = [name for name, v in checks.items() if not v]
    line = f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    if failed:
        line += f" failed checks: {', '.join(failed)}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def add(a, b, d):
    return tuple((x + y) % d for x, y in zip(a, b))


def sub(a, b, d):
    return tuple((x - y) % d for x, y in zip(a, b))


def corpus(count, dims=(2, 3, 4, 6), ns=(1, 2, 3, 4), seed=2024):
    return list(spec_stream(dims, ns, seed=seed, count=count))


# ---------------------------------------------------------------------------


def test_criterion_1_qutrit_ring():
    t0 = time.perf_counter()
    spec, c1, c2 = FX.ring, FX.c1, FX.c2
    zero = (0,) * 7
    target = (1, 1, 1, 0, 1, 1, 1)
    checks = {
        "fixture validates": validate(spec).valid,
        "code passes check_code": check_code(spec, [zero, c1, c2], 3).ok,
        "code passes kl_check": kl_check(spec, [zero, c1, c2], 3, keep_entries=False).verdict,
    }
    for label, extra in (("c1+c2", add(c1, c2, 3)), ("c1-c2", sub(c1, c2, 3))):
        words = [zero, c1, c2, extra]
        v = check_code(spec, words, 3)
        wit = [w for w in v.classical_violations if w.difference == target]
        checks[f"{label} fails classically"] = not v.ok
        checks[f"{label} witness syndrome (1110111)"] = bool(wit)
        checks[f"{label} witness weight 2"] = bool(wit) and weight(wit[0].error) == 2
        checks[f"{label} witness is Cl(E)"] = bool(wit) and classical_rep(spec, wit[0].error) == target
        kl = kl_check(spec, words, 3, keep_entries=False)
        checks[f"{label} fails kl_check"] = not kl.verdict
        checks[f"{label} kl witnesses weight <= 2"] = all(weight(w.error) <= 2 for w in kl.witnesses)
    elapsed = time.perf_counter() - t0
    checks["runtime < 60 s"] = elapsed < 60
    record(1, checks, f"{elapsed:.1f}s")


def test_criterion_2_ququart_star():
    t0 = time.perf_counter()
    spec = FX.star
    rep = validate(spec)
    cf = canonicalize(spec, 2)
    first = cf.spec.generators[0].without_phase()
    closure = scalar_closure(spec, [(0, 0, 0), (0, 1, 1)], 2)
    z0 = parse_literal("Z0", 4, 3)
    hits = gcd_pattern_scan(spec, 2)
    checks = {
        "validates with group order 64": rep.valid and rep.group_order == 64,
        "Cl(Z on qudit 0) = (0,2,2)": classical_rep(spec, z0) == (0, 2, 2),
        "first canonical generator is Z^2 on qudit 0": first == parse_literal("Z0^2", 4, 3),
        # The group also holds Z^2 on qudits 1 and 2 (squares of the other
        # generators), so the weight-1 subgroup has rank 3. Kept as stated.
        "canonical rank = 1": cf.canonical_rank == 1,
        "scalar closure fails": not closure.ok,
        "closure witness 2c = Cl(Z0)": any(
            w.q == 2 and w.syndrome == (0, 2, 2) and classical_rep(spec, w.error) == classical_rep(spec, z0)
            for w in closure.witnesses
        ),
        "gcd witness m=2 vu_gcd=1": any(h.m_value == 2 and h.vu_gcd == 1 for h in hits),
    }
    elapsed = time.perf_counter() - t0
    checks["runtime < 5 s"] = elapsed < 5
    record(2, checks, f"computed canonical rank {cf.canonical_rank}, {elapsed:.2f}s")


def test_criterion_3_x2_z2_state():
    spec = StabilizerSpec(4, 1, [[2], [0]], [[0], [2]])
    psi = stabilized_state(spec)
    target = np.array([1, 0, 1, 0]) / np.sqrt(2)
    ov = psi.overlap(target)
    rep = validate(spec)
    checks = {
        "overlap > 1 - 1e-9": ov > 1 - 1e-9,
        "m = 2 > n = 1": spec.m == 2 > spec.n,
        "m within [n, 2n]": rep.m_range_ok and spec.n <= spec.m <= 2 * spec.n,
        "valid": rep.valid,
    }
    record(3, checks, f"|overlap| = {ov:.12f}")


def test_criterion_4_oracle_agreement():
    t0 = time.perf_counter()
    rng = random.Random(404)
    total = agree = passes = 0
    dims_seen = set()
    for spec in corpus(110, seed=44):
        delta = rng.choice([1, 2, 2])
        lattice = sorted(syndrome_lattice(spec))
        if rng.random() < 0.5:
            res = search(spec, delta, Budget(max_nodes=300), oracle=False)
            words = list(res.code.codewords)
            if rng.random() < 0.3 and len(lattice) > len(words):
                words.append(rng.choice([c for c in lattice if c not in words]))
        else:
            k = rng.randint(0, min(3, len(lattice) - 1))
            words = [lattice[0]] + rng.sample(lattice[1:], k)
        classical = check_code(spec, words, delta).ok
        quantum = kl_check(spec, words, delta, keep_entries=False).verdict
        total += 1
        agree += classical == quantum
        passes += classical
        dims_seen.add(spec.d)
    elapsed = time.perf_counter() - t0
    checks = {
        ">= 100 instances": total >= 100,
        "100% agreement": agree == total,
        "d in {2,3,4,6} covered": dims_seen == {2, 3, 4, 6},
        "runtime < 10 min": elapsed < 600,
    }
    record(4, checks, f"{agree}/{total} agree, {passes} passing codes, {elapsed:.1f}s")


def test_criterion_5_lattice_invariant():
    specs = corpus(60, seed=55)
    sizes_ok = roundtrip_ok = 0
    for spec in specs:
        assert validate(spec).valid
        lattice = syndrome_lattice(spec)
        sizes_ok += len(lattice) == spec.d**spec.n
        if spec.n <= 3:
            roundtrip_ok += all(classical_rep(spec, word_operator_for(spec, c)) == c for c in lattice)
        else:
            roundtrip_ok += 1
    checks = {
        ">= 50 specs": len(specs) >= 50,
        "|lattice| = d^n": sizes_ok == len(specs),
        "word operators round-trip (n <= 3)": roundtrip_ok == len(specs),
    }
    record(5, checks, f"{sizes_ok}/{len(specs)} sizes")


def test_criterion_6_sign_convention():
    specs = corpus(60, seed=66)
    same = 0
    for spec in specs:
        errs = list(enumerate_errors(spec.d, spec.n, min(2, spec.n)))
        same += {classical_rep(spec, E) for E in errs} == {classical_rep_plus(spec, E) for E in errs}
    record(6, {"identical syndrome sets": same == len(specs)}, f"{same}/{len(specs)} specs")


def _pairs_from_search(spec, delta, want, rng):
    """Two-codeword codes {0, c}: members of a searched code, then further neighbours of 0."""
    G = build_clique_graph(spec, delta)
    res = search(spec, delta, Budget(max_nodes=500), oracle=False, graph=G)
    found = [c for c in res.code.codewords if any(c)]
    nbrs = [G.originals[i] for i in G.graph.neighbors(0)]
    rng.shuffle(nbrs)
    for c in nbrs:
        if len(found) >= want:
            break
        if c not in found:
            found.append(c)
    return G, found[:want]


def test_criterion_7_extension_properties():
    rng = random.Random(7)
    scalar_total = scalar_ok = 0
    group_total = group_ok = 0
    for spec in spec_stream((3, 5), (2, 3, 4, 5), seed=77, count=40):
        if spec.d**spec.n > 4000:
            continue
        for delta in (2, 3):
            G, pairs = _pairs_from_search(spec, delta, 5, rng)
            for c in pairs:
                res = scalar_closure(spec, [(0,) * spec.m, c], delta, detection=G.detection)
                if res.base_ok:
                    scalar_total += 1
                    scalar_ok += res.ok
            # group extension: linear code = scalar closure of {0, c}, new word adjacent to all of it
            for c in pairs:
                base = sorted({tuple(q * x % spec.d for x in c) for q in range(spec.d)})
                for new in pairs:
                    if new in base:
                        continue
                    res = group_extension(spec, base, new, delta, detection=G.detection)
                    if res.base_ok and res.seed_ok:
                        group_total += 1
                        group_ok += res.ok
    binary_total = binary_ok = 0
    for spec in spec_stream((2,), (3, 4, 5), seed=33, count=60):
        for delta in (2, 3):
            G, pairs = _pairs_from_search(spec, delta, 6, rng)
            for i, a in enumerate(pairs):
                for b in pairs[i + 1 :]:
                    zero = (0,) * spec.m
                    if not check_code(spec, [zero, a, b], delta, detection=G.detection).ok:
                        continue
                    res = group_extension(spec, [zero, a], b, delta, detection=G.detection)
                    binary_total += 1
                    binary_ok += res.ok and len(res.code) == 4
    checks = {
        ">= 50 scalar instances": scalar_total >= 50,
        "scalar closure 100%": scalar_ok == scalar_total,
        ">= 50 group-extension instances": group_total >= 50,
        "group extension 100%": group_ok == group_total,
        ">= 50 binary instances": binary_total >= 50,
        "binary extension 100%": binary_ok == binary_total,
    }
    record(
        7,
        checks,
        f"scalar {scalar_ok}/{scalar_total}, group {group_ok}/{group_total}, binary {binary_ok}/{binary_total}",
    )


def test_criterion_8_prime_scan_empty():
    specs = list(spec_stream((2, 3, 5, 7), (1, 2, 3, 4), seed=88, count=60))
    specs = [s for s in specs if s.d**s.n <= 2500]
    empty = sum(1 for s in specs for delta in (2, 3) if not gcd_pattern_scan(s, delta))
    checks = {"all prime": all(is_prime(s.d) for s in specs), "every scan empty": empty == 2 * len(specs)}
    record(8, checks, f"{empty}/{2 * len(specs)} scans empty")


def test_criterion_9_clique_solver():
    t0 = time.perf_counter()
    rng = np.random.default_rng(99)
    agree = 0
    for _ in range(50):
        n = int(rng.integers(1, 31))
        A = erdos_renyi(n, float(rng.uniform(0.1, 0.9)), rng)
        res = max_clique(BitGraph.from_dense(A))
        agree += res.optimal and res.size == max_clique_brute(A.tolist())
    ring = search(ring_spec(2, 5), 3, oracle=True)
    elapsed = time.perf_counter() - t0
    checks = {
        "50 random graphs match brute force": agree == 50,
        "ring5 K = 2": ring.code.K == 2,
        "optimality proved": ring.clique.optimal,
        "oracle passes": ring.oracle is not None and ring.oracle.verdict,
        "runtime < 5 min": elapsed < 300,
    }
    record(9, checks, f"{agree}/50 graphs, {elapsed:.1f}s")


def test_criterion_10_determinism(tmp_path, capsys):
    jobs = [
        ("qutrit_ring7.spec", "3", ["--budget", "5000"]),
        ("ququart_star3.spec", "2", []),
        ("ring5_d2.spec", "3", []),
    ]
    identical = 0
    for name, delta, extra in jobs:
        digests = []
        for k in range(2):
            out = tmp_path / f"{name}.{k}.code"
            man = tmp_path / f"{name}.{k}.json"
            argv = ["search", str(data_path(name)), "--delta", delta, "--out", str(out), "--manifest", str(man), *extra]
            assert main(argv) == 0
            digests.append((hashlib.sha256(out.read_bytes()).digest(), hashlib.sha256(man.read_bytes()).digest()))
        identical += digests[0] == digests[1]
    capsys.readouterr()
    record(10, {"byte-identical code files and manifests": identical == len(jobs)}, f"{identical}/{len(jobs)} fixtures")
